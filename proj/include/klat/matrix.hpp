#pragma once

// Dense exact matrices and the integer linear algebra the lattice layer is
// built on: Bareiss determinants, Hermite and Smith normal forms, integer
// kernels, rational inversion, symmetric congruence diagonalisation and an
// LDL^T split for enumeration bounds.  Everything is exact; matrices here
// are small (rank <= ~30), so clarity wins over asymptotics.

#include <klat/errors.hpp>
#include <klat/numeric.hpp>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

namespace klat {

template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    // Row-major nested initialiser, e.g. Mat<Integer>::from_rows({{2,-1},{-1,2}}).
    static Mat from_rows(const std::vector<std::vector<T>>& rows) {
        Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            assert_internal(rows[i].size() == m.cols_, "from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using IMat = Mat<Integer>;
using QMat = Mat<Rational>;

template <class T>
Mat<T> transpose(const Mat<T>& m) {
    Mat<T> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

template <class T>
Mat<T> mul(const Mat<T>& a, const Mat<T>& b) {
    assert_internal(a.cols() == b.rows(), "mul: shape mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class T>
std::vector<T> mul(const Mat<T>& a, const std::vector<T>& x) {
    assert_internal(a.cols() == x.size(), "mul: vector length mismatch");
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
    assert_internal(x.size() == y.size(), "dot: length mismatch");
    T s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// x^T A y — the bilinear form evaluation used for lattice pairings.
template <class T>
T bilinear(const std::vector<T>& x, const Mat<T>& a, const std::vector<T>& y) {
    return dot(x, mul(a, y));
}

template <class T>
bool is_symmetric(const Mat<T>& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Mat<T>& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    return os << "]";
}

// Exact determinant by Bareiss fraction-free elimination.
inline Integer det(const IMat& m) {
    assert_internal(m.rows() == m.cols(), "det: not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IMat a = m;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// Column-style Hermite normal form of the column span of b (full column
// rank required): lower-echelon with positive pivots and entries to the
// right of each pivot reduced into [0, pivot).  The result is the canonical
// basis of the integer column span, independent of the input basis.
inline IMat hnf_column_span(const IMat& b) {
    std::size_t n = b.rows(), k = b.cols();
    IMat h = b;
    std::size_t c = 0;  // next pivot column
    for (std::size_t r = 0; r < n && c < k; ++r) {
        // Euclid on row r across columns c..k-1 until one nonzero survives.
        for (;;) {
            std::size_t p = k;
            for (std::size_t j = c; j < k; ++j)
                if (h(r, j) != 0 && (p == k || abs(h(r, j)) < abs(h(r, p)))) p = j;
            if (p == k) break;  // row is zero in the working block
            h.swap_cols(c, p);
            bool clean = true;
            for (std::size_t j = c + 1; j < k; ++j) {
                if (h(r, j) == 0) continue;
                Integer q = floor_div(h(r, j), h(r, c));
                for (std::size_t i = 0; i < n; ++i) h(i, j) -= q * h(i, c);
                if (h(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0)
            for (std::size_t i = 0; i < n; ++i) h(i, c) = -h(i, c);
        // Reduce the pivot row to the right... pivots sit left-to-right, so
        // earlier pivot columns are 0..c-1; reduce those entries mod pivot.
        for (std::size_t j = 0; j < c; ++j) {
            Integer q = floor_div(h(r, j), h(r, c));
            if (q == 0) continue;
            for (std::size_t i = 0; i < n; ++i) h(i, j) -= q * h(i, c);
        }
        ++c;
    }
    assert_internal(c == k, "hnf_column_span: input not of full column rank");
    return h;
}

struct SmithDecomposition {
    IMat s;  // diagonal, nonnegative, s(i,i) | s(i+1,i+1)
    IMat u;  // unimodular row transform
    IMat v;  // unimodular column transform;  u * a * v == s
};

// Smith normal form with both transforms.
inline SmithDecomposition smith_normal_form(const IMat& a0) {
    std::size_t m = a0.rows(), n = a0.cols();
    SmithDecomposition r{a0, IMat::identity(m), IMat::identity(n)};
    IMat& a = r.s;

    auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t j = 0; j < n; ++j) a(dst, j) -= q * a(src, j);
        for (std::size_t j = 0; j < m; ++j) r.u(dst, j) -= q * r.u(src, j);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t i = 0; i < m; ++i) a(i, dst) -= q * a(i, src);
        for (std::size_t i = 0; i < n; ++i) r.v(i, dst) -= q * r.v(i, src);
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // Find the entry of least absolute value in the trailing block.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) { pi = i; pj = j; }
        if (pi == m) break;  // trailing block all zero
        a.swap_rows(t, pi);
        r.u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        r.v.swap_cols(t, pj);

        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (a(i, t) == 0) continue;
            row_axpy(i, t, floor_div(a(i, t), a(t, t)));
            if (a(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (a(t, j) == 0) continue;
            col_axpy(j, t, floor_div(a(t, j), a(t, t)));
            if (a(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // smaller remainders appeared; re-pick pivot

        // Pivot divides its row and column; make sure it divides the whole
        // trailing block, else fold an offending row in and redo.
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (a(i, j) % a(t, t) != 0) { bad = i; break; }
        if (bad != m) {
            row_axpy(t, bad, Integer(-1));  // row_t += row_bad
            continue;
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < m; ++j) r.u(t, j) = -r.u(t, j);
        }
        ++t;
    }
    return r;
}

// Basis of the integer kernel {x : a x = 0}, HNF-canonicalised columns;
// may have zero columns count (returned as an n x 0 matrix).
inline IMat integer_kernel(const IMat& a) {
    std::size_t n = a.cols();
    SmithDecomposition d = smith_normal_form(a);
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < n; ++j) {
        bool diag_zero = j >= a.rows() || d.s(j, j) == 0;
        if (diag_zero) zero_cols.push_back(j);
    }
    IMat basis(n, zero_cols.size());
    for (std::size_t c = 0; c < zero_cols.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) basis(i, c) = d.v(i, zero_cols[c]);
    if (basis.cols() == 0) return basis;
    return hnf_column_span(basis);
}

// Exact inverse over the rationals; the input must be nonsingular.
inline QMat inverse(const QMat& m) {
    assert_internal(m.rows() == m.cols(), "inverse: not square");
    std::size_t n = m.rows();
    QMat a = m, inv = QMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        assert_internal(p < n, "inverse: singular matrix");
        a.swap_rows(k, p);
        inv.swap_rows(k, p);
        Rational piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline QMat to_rational(const IMat& m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
    return q;
}

// Signature (p, q) of a nondegenerate symmetric matrix via exact symmetric
// congruence diagonalisation.  Returns false when a zero block shows the
// form to be degenerate.
inline bool signature(const IMat& g, std::size_t& pos, std::size_t& neg) {
    assert_internal(is_symmetric(g), "signature: not symmetric");
    std::size_t n = g.rows();
    QMat a = to_rational(g);
    pos = neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = n;
            for (std::size_t j = k + 1; j < n; ++j)
                if (a(j, j) != 0) { p = j; break; }
            if (p < n) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else {
                std::size_t q = n;
                for (std::size_t j = k + 1; j < n; ++j)
                    if (a(k, j) != 0) { q = j; break; }
                if (q == n) return false;  // zero row in the trailing block
                // diag(k) becomes 2*a(k,q) != 0 after the symmetric fold
                for (std::size_t j = 0; j < n; ++j) a(k, j) += a(q, j);
                for (std::size_t i = 0; i < n; ++i) a(i, k) += a(i, q);
            }
        }
        Rational piv = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / piv;
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < n; ++j) a(j, i) -= f * a(j, k);
        }
        (piv > 0 ? pos : neg) += 1;
    }
    return true;
}

struct LdlDecomposition {
    bool positive_definite = false;
    QVec d;  // diagonal, all > 0 when positive_definite
    QMat u;  // unit upper-triangular;  m == u^T diag(d) u
};

// LDL^T split of a symmetric rational matrix, used for exact enumeration
// bounds.  positive_definite is false as soon as a pivot <= 0 appears.
inline LdlDecomposition ldl(const QMat& m) {
    assert_internal(m.rows() == m.cols(), "ldl: not square");
    std::size_t n = m.rows();
    LdlDecomposition r;
    r.d.assign(n, Rational(0));
    r.u = QMat::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational di = m(i, i);
        for (std::size_t k = 0; k < i; ++k) di -= r.d[k] * r.u(k, i) * r.u(k, i);
        if (di <= 0) return r;
        r.d[i] = di;
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational x = m(i, j);
            for (std::size_t k = 0; k < i; ++k) x -= r.d[k] * r.u(k, i) * r.u(k, j);
            r.u(i, j) = x / di;
        }
    }
    r.positive_definite = true;
    return r;
}

}  // namespace klat
