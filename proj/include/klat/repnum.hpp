#pragma once

// Representation numbers N_L(n) of positive definite lattices via exact
// theta-series tables, the 4N_{E7} > 28N_{E6} + 63N_{D6} inequality and its
// failure scan, and the decomposition of R(E8) into an E7 shell, +/-r, and
// 28 copies of A2 through a fixed root.
//
// Tables are built by a coset-splitting recursion rather than per-vector
// enumeration: writing b for the last basis vector, the vectors of L + t
// with pairing p against b form a coset of the rank-(m-1) lattice b^perp,
// so theta(L + t) is a finite sum of (one-dimensional progression theta) x
// (shifted theta of b^perp), memoised by (Gram, shift).  All exponents live
// on an exact rational grid; coefficients are exact integer counts.

#include <klat/enumerate.hpp>
#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/matrix.hpp>
#include <klat/roots.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace klat {

namespace detail {

// Integer-coefficient q-series on the exponent grid {k/den}, truncated at a
// fixed bound.  Coefficients are vector counts; they stay far below 2^63
// for every table this library builds (rank <= 8, norm <= a few thousand).
struct ThetaSeries {
    Integer den = 1;
    std::vector<long long> c;  // c[k] = multiplicity of exponent k/den
};

inline std::string series_key(const IMat& gram, const QVec& shift) {
    std::ostringstream os;
    os << gram.rows();
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j) os << "," << gram(i, j);
    os << "|";
    for (const Rational& s : shift) os << numerator(s) << "/" << denominator(s) << ",";
    return os.str();
}

class ThetaBuilder {
public:
    explicit ThetaBuilder(Integer bound) : bound_(std::move(bound)) {}

    // Multiplicities of (v + t, v + t) over v in the lattice, exponents
    // truncated at bound; shift entries must be reduced into [0, 1).
    const ThetaSeries& shifted_theta(const IMat& gram, const QVec& shift) {
        std::string key = series_key(gram, shift);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        ThetaSeries s = gram.rows() == 1 ? theta_rank1(gram, shift) : theta_split(gram, shift);
        return memo_.emplace(std::move(key), std::move(s)).first->second;
    }

private:
    ThetaSeries theta_rank1(const IMat& gram, const QVec& shift) {
        const Integer& a = gram(0, 0);
        assert_internal(a > 0, "rank-1 theta of a nonpositive form");
        // exponents a (x + p/q)^2 = a (q x + p)^2 / q^2 on the grid 1/q^2
        Integer p = numerator(shift[0]), q = denominator(shift[0]);
        ThetaSeries s;
        s.den = q * q;
        s.c.assign(to_grid_size(s.den), 0);
        Integer r = isqrt(bound_ * q * q / a);  // |qx + p| <= r
        for (Integer x = ceil_div(-r - p, q); x <= floor_div(r - p, q); ++x) {
            Integer w = q * x + p;
            Integer k = a * w * w;
            if (k > bound_ * s.den) continue;
            s.c[to_int64(k)] += 1;
        }
        return s;
    }

    ThetaSeries theta_split(const IMat& gram, const QVec& shift) {
        std::size_t m = gram.rows();
        Integer qm = gram(m - 1, m - 1);
        assert_internal(qm > 0, "split pivot of a nonpositive form");

        // Pairings with the pivot vector b: over x in Z^m they run through
        // g Z; pick a Bezout solution with pairing exactly g.
        IVec row(m);
        Integer g = 0;
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = gram(m - 1, j);
            g = gcd(g, row[j]);
        }
        IVec xg = bezout_row(row, g);

        // b^perp as a sublattice, with its canonical basis.
        IMat rowmat(1, m);
        for (std::size_t j = 0; j < m; ++j) rowmat(0, j) = row[j];
        IMat kernel = integer_kernel(rowmat);
        assert_internal(kernel.cols() == m - 1, "pivot-orthogonal sublattice of wrong rank");
        IMat subgram = mul(transpose(kernel), mul(gram, kernel));
        QMat solver = mul(inverse(mul(transpose(to_rational(kernel)), to_rational(kernel))),
                          transpose(to_rational(kernel)));

        // Shift class period: stepping the pairing by g moves the projected
        // shift by a fixed vector delta; P = its denominator in the kernel
        // basis is the number of distinct sublattice cosets.
        QVec t(shift);
        Rational p0(0);
        for (std::size_t j = 0; j < m; ++j) p0 += Rational(row[j]) * t[j];
        QVec delta(m);
        for (std::size_t j = 0; j < m; ++j) {
            delta[j] = Rational(xg[j]);
            if (j == m - 1) delta[j] -= Rational(g) / Rational(qm);
        }
        QVec delta_s = project(solver, kernel, delta);
        Integer period = 1;
        for (const Rational& x : delta_s) period = lcm(period, denominator(x));

        ThetaSeries total;
        for (Integer j = 0; j < period; ++j) {
            Rational pj = p0 + Rational(j * g);
            QVec sigma(m);
            for (std::size_t k = 0; k < m; ++k) {
                sigma[k] = t[k] + Rational(j * xg[k]);
                if (k == m - 1) sigma[k] -= pj / Rational(qm);
            }
            QVec sj = project(solver, kernel, sigma);
            for (Rational& x : sj) x = frac(x);
            const ThetaSeries sub = shifted_theta(subgram, sj);  // copy: memo_ may rehash

            // One-dimensional factor: exponents p^2 / qm over the class
            // p = pj + c * (period g), c in Z.
            ThetaSeries f;
            Integer d0 = denominator(pj), n0 = numerator(pj);
            f.den = d0 * d0 * qm;
            f.c.assign(to_grid_size(f.den), 0);
            Integer step = period * g * d0;
            Integer r = isqrt(bound_ * d0 * d0 * qm);  // |n0 + c step| <= r
            for (Integer c = ceil_div(-r - n0, step); c <= floor_div(r - n0, step); ++c) {
                Integer w = n0 + c * step;
                Integer k = w * w;
                if (k > bound_ * f.den) continue;
                f.c[to_int64(k)] += 1;
            }
            accumulate_product(total, f, sub);
        }
        return total;
    }

    // Smallest x with row . x = g (= gcd of the row), by chained Bezout.
    static IVec bezout_row(const IVec& row, const Integer& g) {
        std::size_t m = row.size();
        IVec x(m, Integer(0));
        Integer acc = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (row[j] == 0) continue;
            if (acc == 0) {
                x[j] = row[j] > 0 ? 1 : -1;
                acc = abs(row[j]);
                continue;
            }
            // acc, row[j] -> gcd via extended Euclid on the pair.
            Integer a = acc, b = row[j], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (b != 0) {
                Integer q = a / b;
                a -= q * b;
                std::swap(a, b);
                Integer ns = s0 - q * s1;
                s0 = s1; s1 = ns;
                Integer nt = t0 - q * t1;
                t0 = t1; t1 = nt;
            }
            if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
            for (std::size_t k = 0; k < j; ++k) x[k] *= s0;
            x[j] = t0;
            acc = a;
        }
        assert_internal(acc == g, "Bezout row reduction lost the gcd");
        return x;
    }

    // Coordinates of a span member in the kernel basis (exact; verified).
    static QVec project(const QMat& solver, const IMat& basis, const QVec& v) {
        QVec s = mul(solver, v);
        QVec back = mul(to_rational(basis), s);
        for (std::size_t i = 0; i < v.size(); ++i)
            assert_internal(back[i] == v[i], "projected shift left the kernel span");
        return s;
    }

    // total += f * sub, truncated at the bound.
    void accumulate_product(ThetaSeries& total, const ThetaSeries& f, const ThetaSeries& sub) {
        Integer den = lcm(f.den, sub.den);
        if (total.c.empty()) {
            total.den = den;
        } else {
            den = lcm(den, total.den);
        }
        if (den != total.den || total.c.empty()) regrid(total, den);
        Integer mf = den / f.den, ms = den / sub.den;
        long long mf64 = to_int64(mf), ms64 = to_int64(ms);
        long long cap = static_cast<long long>(total.c.size());
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            if (f.c[i] == 0) continue;
            long long base = static_cast<long long>(i) * mf64;
            long long fi = f.c[i];
            for (std::size_t j = 0; j < sub.c.size(); ++j) {
                if (sub.c[j] == 0) continue;
                long long k = base + static_cast<long long>(j) * ms64;
                if (k >= cap) break;
                total.c[k] += fi * sub.c[j];
            }
        }
    }

    void regrid(ThetaSeries& s, const Integer& den) {
        std::vector<long long> c(to_grid_size(den), 0);
        long long m = to_int64(den / s.den);
        for (std::size_t k = 0; k < s.c.size(); ++k)
            if (s.c[k] != 0) c[static_cast<std::size_t>(k) * m] = s.c[k];
        s.den = den;
        s.c = std::move(c);
    }

    std::size_t to_grid_size(const Integer& den) const {
        Integer n = bound_ * den + 1;
        assert_internal(n < (Integer(1) << 31), "theta exponent grid too fine");
        return static_cast<std::size_t>(to_int64(n));
    }

    Integer bound_;
    std::map<std::string, ThetaSeries> memo_;
};

}  // namespace detail

// N_L(n) for all 0 <= n <= bound at once.
struct ThetaTable {
    IMat gram;
    Integer bound;
    std::vector<long long> counts;  // counts[n] = #{v : (v,v) = n}

    long long at(const Integer& n) const {
        assert_internal(n >= 0 && n <= bound, "norm outside the table bound");
        return counts[static_cast<std::size_t>(to_int64(n))];
    }
};

inline ThetaTable build_theta_table(const IntegralLattice& L, const Integer& bound) {
    check(bound >= 0, errc::invalid_argument, "theta table bound must be >= 0");
    {
        std::size_t p = 0, q = 0;
        signature(L.gram(), p, q);
        check(q == 0, errc::not_positive_definite, "theta table of an indefinite lattice");
    }
    detail::ThetaBuilder builder(bound);
    QVec zero(L.rank(), Rational(0));
    const detail::ThetaSeries& s = builder.shifted_theta(L.gram(), zero);
    ThetaTable t;
    t.gram = L.gram();
    t.bound = bound;
    t.counts.assign(static_cast<std::size_t>(to_int64(bound)) + 1, 0);
    long long den = to_int64(s.den);
    for (std::size_t k = 0; k < s.c.size(); ++k) {
        if (s.c[k] == 0) continue;
        assert_internal(static_cast<long long>(k) % den == 0,
                        "integral lattice with fractional theta exponent");
        std::size_t n = static_cast<std::size_t>(static_cast<long long>(k) / den);
        if (n < t.counts.size()) t.counts[n] = s.c[k];
    }
    assert_internal(t.counts[0] == 1, "theta table lost the zero vector");
    return t;
}

namespace detail {

// Process-wide memoised tables, keyed by the Gram matrix.
class ThetaRegistry {
public:
    static ThetaRegistry& instance() {
        static ThetaRegistry reg;
        return reg;
    }

    std::shared_ptr<const ThetaTable> table(const IntegralLattice& L, const Integer& min_bound) {
        std::ostringstream os;
        os << L.gram();
        std::string key = os.str();
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tables_.find(key);
        if (it != tables_.end() && it->second->bound >= min_bound) return it->second;
        Integer bound = min_bound < 64 ? Integer(64) : min_bound;
        if (it != tables_.end() && it->second->bound * 2 > bound) bound = it->second->bound * 2;
        auto built = std::make_shared<const ThetaTable>(build_theta_table(L, bound));
        tables_[key] = built;
        return built;
    }

    // Install an externally built (e.g. cached) table; kept only if it
    // reaches further than what is already registered.
    void prime(std::shared_ptr<const ThetaTable> t) {
        std::ostringstream os;
        os << t->gram;
        std::string key = os.str();
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tables_.find(key);
        if (it == tables_.end() || it->second->bound < t->bound) tables_[key] = std::move(t);
    }

    // The registered table for this Gram matrix, if any.
    std::shared_ptr<const ThetaTable> lookup(const IMat& gram) {
        std::ostringstream os;
        os << gram;
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tables_.find(os.str());
        return it == tables_.end() ? nullptr : it->second;
    }

private:
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const ThetaTable>> tables_;
};

}  // namespace detail

// #{v in L : (v,v) = n}; odd n on an even lattice yields 0 (total-function
// convention, no error), computed from the memoised theta table.
inline long long rep_number(const IntegralLattice& L, const Integer& n) {
    check(n > 0, errc::invalid_argument, "rep_number needs a positive norm");
    if (L.even() && n % 2 != 0) return 0;
    auto table = detail::ThetaRegistry::instance().table(L, n);
    return table->at(n);
}

struct IneqCheck {
    bool holds = false;
    long long lhs = 0;  // 4 N_{E7}(2d)
    long long rhs = 0;  // 28 N_{E6}(2d) + 63 N_{D6}(2d)
};

inline IneqCheck mainineq_check(Integer d) {
    check(d >= 1, errc::invalid_argument, "inequality check needs d >= 1");
    static const IntegralLattice e7 = lattice_E(7);
    static const IntegralLattice e6 = lattice_E(6);
    static const IntegralLattice d6 = lattice_D(6);
    IneqCheck r;
    r.lhs = 4 * rep_number(e7, 2 * d);
    r.rhs = 28 * rep_number(e6, 2 * d) + 63 * rep_number(d6, 2 * d);
    r.holds = r.lhs > r.rhs;
    return r;
}

// Ascending list of d <= d_max where the inequality fails.
inline std::vector<Integer> mainineq_failure_scan(const Integer& d_max) {
    check(d_max >= 1, errc::invalid_argument, "scan needs d_max >= 1");
    // Warm the three tables once; the per-d checks are then table lookups.
    detail::ThetaRegistry::instance().table(lattice_E(7), 2 * d_max);
    detail::ThetaRegistry::instance().table(lattice_E(6), 2 * d_max);
    detail::ThetaRegistry::instance().table(lattice_D(6), 2 * d_max);
    std::vector<Integer> fails;
    for (Integer d = 1; d <= d_max; ++d)
        if (!mainineq_check(d).holds) fails.push_back(d);
    return fails;
}

struct BouquetReport {
    long long e7_roots = 0;   // roots orthogonal to r
    long long a2_copies = 0;  // A2 triples containing +/-r
    long long central = 0;    // the pair +/-r itself
};

// Splits the 240 roots of E8 into r^perp (an E7 system, 126 roots), +/-r,
// and 28 disjoint A2 copies through +/-r covering the remaining 112.
inline BouquetReport bouquet_check(const LatticeVector& r) {
    check(r.norm() == 2, errc::not_a_root, "bouquet centre must be a root (norm 2)");
    check(r.lattice->gram() == lattice_E(8).gram(), errc::not_a_root,
          "bouquet centre must be a root of E8 in the simple-root basis");
    const IntegralLattice& L = *r.lattice;
    std::vector<LatticeVector> roots = vectors_of_norm(L, 2);
    assert_internal(roots.size() == 240, "E8 does not enumerate 240 roots");

    BouquetReport rep;
    std::set<IVec> quads;
    for (const LatticeVector& s : roots) {
        Integer pr = s.pair(r);
        if (pr == 0) {
            rep.e7_roots += 1;
            continue;
        }
        if (s.coords == r.coords) { rep.central += 1; continue; }
        bool is_neg = true;
        for (std::size_t i = 0; i < s.coords.size(); ++i)
            if (s.coords[i] != -r.coords[i]) { is_neg = false; break; }
        if (is_neg) { rep.central += 1; continue; }
        // Everything else pairs to +/-1 and lives in a unique A2 through r:
        // {s, r-s} up to sign.  Canonical key: lexicographic minimum of the
        // four coordinate tuples in the quadruple.
        assert_internal(pr == 1 || pr == -1, "root outside E7 with pairing != +/-1");
        IVec a = s.coords;
        if (pr < 0)
            for (Integer& x : a) x = -x;  // replace s by -s so (r, a) = 1
        IVec b(a.size()), na(a.size()), nb(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            b[i] = r.coords[i] - a[i];
            na[i] = -a[i];
            nb[i] = -b[i];
        }
        IVec key = std::min(std::min(a, b), std::min(na, nb));
        quads.insert(key);
    }
    rep.a2_copies = static_cast<long long>(quads.size());
    assert_internal(rep.e7_roots + rep.central + 4 * rep.a2_copies ==
                        static_cast<long long>(roots.size()),
                    "bouquet pieces do not cover R(E8)");
    return rep;
}

}  // namespace klat
