#pragma once

// Exact enumeration of the norm-n shell of a positive definite lattice.
// Fincke-Pohst style recursion with all bounds kept in scaled integers (no
// floating point): the LDL^T split of the *reversed* Gram matrix makes the
// first coordinate the outermost loop, so leaves appear in ascending
// lexicographic coordinate order.  A listener receives push/pop/leaf events,
// which lets searches fuse extra bookkeeping (e.g. root-orthogonality
// counters) into the walk and abort early.
//
// Arithmetic is dispatched to int64 when a conservative worst-case bound
// fits, with an arbitrary-precision fallback; both paths are exact.

#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/matrix.hpp>
#include <klat/numeric.hpp>

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <vector>

namespace klat {

namespace detail {

inline long long isqrt_ll(long long x) {
    if (x <= 0) return 0;
    auto s = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (s > 0 && s * s > x) --s;
    while ((s + 1) * (s + 1) <= x) ++s;
    return s;
}

inline long long floor_div_ll(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Scalar shims so the scan body reads identically for both arithmetics.
inline long long shell_isqrt(long long x) { return isqrt_ll(x); }
inline Integer shell_isqrt(const Integer& x) { return isqrt(x); }
inline long long shell_fdiv(long long a, long long b) { return floor_div_ll(a, b); }
inline Integer shell_fdiv(const Integer& a, const Integer& b) { return floor_div(a, b); }

}  // namespace detail

// Per-lattice data for shell scans: the scaled LDL^T of the reversed Gram
// matrix plus exact coordinate boxes.  Build once, scan many norms.
class ShellContext {
public:
    explicit ShellContext(const IntegralLattice& L) : lattice_(&L) {
        std::size_t n = L.rank();
        QMat rev(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rev(i, j) = Rational(L.gram()(n - 1 - i, n - 1 - j));
        LdlDecomposition f = ldl(rev);
        check(f.positive_definite, errc::not_positive_definite,
              "norm-shell enumeration needs a positive definite lattice");

        scale_.resize(n);
        mult_.resize(n);
        u_.resize(n);
        Integer dglob = 1;
        std::vector<Integer> dd(n), dn(n), s(n);
        for (std::size_t i = 0; i < n; ++i) {
            dn[i] = numerator(f.d[i]);
            dd[i] = denominator(f.d[i]);
            s[i] = 1;
            for (std::size_t j = i + 1; j < n; ++j) s[i] = lcm(s[i], denominator(f.u(i, j)));
            dglob = lcm(dglob, dd[i] * s[i] * s[i]);
        }
        dglob_ = dglob;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t lvl = n - 1 - i;  // level assigns original coordinate lvl
            scale_[lvl] = s[i];
            mult_[lvl] = dn[i] * (dglob / (dd[i] * s[i] * s[i]));
            u_[lvl].assign(lvl, Integer(0));
            for (std::size_t j = i + 1; j < n; ++j) {
                Rational e = f.u(i, j) * Rational(s[i]);
                assert_internal(denominator(e) == 1, "scaled LDL entry not integral");
                u_[lvl][n - 1 - j] = numerator(e);
            }
        }
        ginv_diag_.resize(n);
        QMat gi = inverse(to_rational(L.gram()));
        for (std::size_t i = 0; i < n; ++i) ginv_diag_[i] = gi(i, i);
    }

    const IntegralLattice& lattice() const noexcept { return *lattice_; }
    std::size_t rank() const noexcept { return lattice_->rank(); }

    // Exact per-coordinate box |x_i| <= isqrt(norm * (G^-1)_ii) for the shell.
    IVec coordinate_box(const Integer& norm) const {
        IVec box(rank());
        for (std::size_t i = 0; i < rank(); ++i)
            box[i] = isqrt(floor_rat(Rational(norm) * ginv_diag_[i]));
        return box;
    }

    bool fits_int64(const Integer& norm) const {
        const Integer limit = Integer(1) << 62;
        if (norm * dglob_ >= limit) return false;
        IVec box = coordinate_box(norm);
        for (std::size_t l = 0; l < rank(); ++l) {
            Integer cmax = 0;
            for (std::size_t l2 = 0; l2 < l; ++l2) cmax += abs(u_[l][l2]) * (box[l2] + 1);
            Integer wmax = scale_[l] * (box[l] + 2) + cmax;
            if (mult_[l] * wmax * wmax >= limit) return false;
        }
        return true;
    }

    template <class T>
    struct Tables {
        std::vector<T> scale, mult;
        std::vector<std::vector<T>> u;
        T r0;
    };

    template <class T>
    Tables<T> tables(const Integer& norm) const {
        Tables<T> t;
        std::size_t n = rank();
        t.scale.resize(n);
        t.mult.resize(n);
        t.u.resize(n);
        for (std::size_t l = 0; l < n; ++l) {
            t.scale[l] = convert<T>(scale_[l]);
            t.mult[l] = convert<T>(mult_[l]);
            t.u[l].resize(l);
            for (std::size_t l2 = 0; l2 < l; ++l2) t.u[l][l2] = convert<T>(u_[l][l2]);
        }
        t.r0 = convert<T>(norm * dglob_);
        return t;
    }

private:
    template <class T>
    static T convert(const Integer& x) {
        if constexpr (std::is_same_v<T, Integer>)
            return x;
        else
            return x.template convert_to<T>();
    }

    const IntegralLattice* lattice_;
    std::vector<Integer> scale_, mult_;
    std::vector<std::vector<Integer>> u_;  // u_[l][l2], l2 < l
    Integer dglob_;
    QVec ginv_diag_;
};

namespace detail {

template <class T, class Listener>
class ShellScan {
public:
    ShellScan(const ShellContext::Tables<T>& t, std::size_t n, bool representatives, Listener& lis)
        : t_(t), n_(n), reps_(representatives), lis_(lis),
          cmat_(n * (n + 1), T(0)), budget_(n + 1, T(0)) {}

    // Returns false iff the listener aborted the walk.
    bool run() {
        budget_[0] = t_.r0;
        return descend(0, reps_);
    }

private:
    T& cmat(std::size_t lvl, std::size_t depth) { return cmat_[lvl * (n_ + 1) + depth]; }

    bool descend(std::size_t lvl, bool leading_zero) {
        const T& r = budget_[lvl];
        const T c = cmat(lvl, lvl);
        const T& s = t_.scale[lvl];
        const T& m = t_.mult[lvl];

        if (lvl == n_ - 1) {
            // Solve m * w^2 == r exactly, w = s*y + c.
            if (r % m != 0) return true;
            T q = r / m;
            T b = shell_isqrt(q);
            if (b * b != q) return true;
            for (int sign = -1; sign <= 1; sign += 2) {
                if (b == 0 && sign > 0) break;
                T w = (sign < 0) ? T(-b) : b;
                if ((w - c) % s != 0) continue;
                T y = (w - c) / s;
                if (leading_zero && y <= 0) continue;
                lis_.push(lvl, y);
                bool go = lis_.leaf();
                lis_.pop(lvl);
                if (!go) return false;
            }
            return true;
        }

        T b = shell_isqrt(r / m);
        T lo = -shell_fdiv(b + c, s);
        T hi = shell_fdiv(b - c, s);
        if (leading_zero && lo < 0) lo = 0;
        for (T y = lo; y <= hi; ++y) {
            T w = s * y + c;
            budget_[lvl + 1] = r - m * w * w;
            for (std::size_t l2 = lvl + 1; l2 < n_; ++l2)
                cmat(l2, lvl + 1) = cmat(l2, lvl) + t_.u[l2][lvl] * y;
            lis_.push(lvl, y);
            bool go = descend(lvl + 1, leading_zero && y == 0);
            lis_.pop(lvl);
            if (!go) return false;
        }
        return true;
    }

    const ShellContext::Tables<T>& t_;
    std::size_t n_;
    bool reps_;
    Listener& lis_;
    std::vector<T> cmat_;
    std::vector<T> budget_;
};

}  // namespace detail

// Walks every lattice vector of the given norm (one per +/- pair when
// representatives is set, the representative having its first nonzero
// coordinate positive), in ascending lexicographic coordinate order.
// Listener concept:
//   void push(std::size_t level, <scalar> y);   // coordinate level set to y
//   void pop(std::size_t level);
//   bool leaf();                                // false aborts the scan
// Returns false iff the listener aborted.
template <class Listener>
bool scan_norm_shell(const ShellContext& cx, const Integer& norm, bool representatives,
                     Listener& lis) {
    check(norm > 0, errc::invalid_argument, "shell norm must be positive");
    if (cx.lattice().even() && norm % 2 != 0) return true;  // even lattice: odd shells empty
    if (cx.fits_int64(norm)) {
        auto t = cx.tables<long long>(norm);
        detail::ShellScan<long long, Listener> scan(t, cx.rank(), representatives, lis);
        return scan.run();
    }
    auto t = cx.tables<Integer>(norm);
    detail::ShellScan<Integer, Listener> scan(t, cx.rank(), representatives, lis);
    return scan.run();
}

namespace detail {

struct CollectListener {
    std::size_t n;
    IVec current;
    std::vector<IVec>* out;

    explicit CollectListener(std::size_t rank, std::vector<IVec>& sink)
        : n(rank), current(rank, Integer(0)), out(&sink) {}

    template <class T>
    void push(std::size_t lvl, const T& y) { current[lvl] = Integer(y); }
    void pop(std::size_t) {}
    bool leaf() {
        out->push_back(current);
        return true;
    }
};

}  // namespace detail

// All v with (v, v) = n, both signs listed, ascending lexicographic order.
inline std::vector<LatticeVector> vectors_of_norm(const IntegralLattice& L, const Integer& n) {
    check(n > 0, errc::invalid_argument, "vectors_of_norm needs a positive norm");
    ShellContext cx(L);
    std::vector<IVec> coords;
    detail::CollectListener lis(L.rank(), coords);
    scan_norm_shell(cx, n, /*representatives=*/false, lis);
    std::vector<LatticeVector> out;
    out.reserve(coords.size());
    for (auto& c : coords) out.emplace_back(L, std::move(c));
    return out;
}

// One vector per +/- pair, ascending lexicographic order of representatives.
inline std::vector<LatticeVector> shell_representatives(const IntegralLattice& L, const Integer& n) {
    check(n > 0, errc::invalid_argument, "shell_representatives needs a positive norm");
    ShellContext cx(L);
    std::vector<IVec> coords;
    detail::CollectListener lis(L.rank(), coords);
    scan_norm_shell(cx, n, /*representatives=*/true, lis);
    std::vector<LatticeVector> out;
    out.reserve(coords.size());
    for (auto& c : coords) out.emplace_back(L, std::move(c));
    return out;
}

}  // namespace klat
