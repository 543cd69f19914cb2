#pragma once

// The finite quadratic form on D(L) = L*/L: invariant factors and generators
// via Smith normal form, q-values mod 2Z, classes of dual vectors, the
// induced action of reflections, and the Eichler two-invariant record.

#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/matrix.hpp>
#include <klat/numeric.hpp>

#include <cstddef>
#include <vector>

namespace klat {

// An element of D(L), written in terms of the group's cyclic generators and
// as a rational coset representative in the lattice basis (entries in [0,1)).
struct DiscElement {
    IVec exponents;       // one per invariant factor, reduced mod that factor
    QVec coset;           // representative of v + L with coordinates in [0,1)
    Rational q_value;     // (v, v) mod 2Z, reduced into [0, 2)
    Integer order = 1;    // additive order in D(L)

    bool is_trivial() const {
        for (const Integer& e : exponents)
            if (e != 0) return false;
        return true;
    }
};

class DiscriminantGroup {
public:
    explicit DiscriminantGroup(const IntegralLattice& L) : lattice_(&L) {
        SmithDecomposition d = smith_normal_form(L.gram());
        std::size_t n = L.rank();
        // Diagonal entries come out in a dividing chain 1 | ... | s_n with
        // product |det|; the factors > 1 present the group.
        snf_diag_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            snf_diag_[i] = d.s(i, i);
            assert_internal(snf_diag_[i] > 0, "nondegenerate Gram with zero Smith entry");
        }
        u_ = d.u;
        for (std::size_t i = 0; i < n; ++i) {
            if (snf_diag_[i] == 1) continue;
            invariant_factors_.push_back(snf_diag_[i]);
            gen_index_.push_back(i);
            // Generator: (column i of V) / s_i, a dual vector of order s_i.
            QVec g(n);
            for (std::size_t r = 0; r < n; ++r)
                g[r] = frac(Rational(d.v(r, i)) / Rational(snf_diag_[i]));
            generators_.push_back(g);
            qform_values_.push_back(q_value(g));
        }
    }

    const IntegralLattice& lattice() const noexcept { return *lattice_; }
    const IVec& invariant_factors() const noexcept { return invariant_factors_; }
    const std::vector<QVec>& generators() const noexcept { return generators_; }
    const QVec& qform_values() const noexcept { return qform_values_; }

    Integer order() const {
        Integer o = 1;
        for (const Integer& f : invariant_factors_) o *= f;
        return o;
    }

    bool is_dual_vector(const QVec& y) const {
        QVec w = mul(to_rational(lattice_->gram()), y);
        for (const Rational& x : w)
            if (denominator(x) != 1) return false;
        return true;
    }

    // q_L(y) = (y, y) mod 2Z in [0, 2) for a dual vector y.
    Rational q_value(const QVec& y) const {
        QMat g = to_rational(lattice_->gram());
        return mod_two(bilinear(y, g, y));
    }

    // Class of a dual vector y in D(L), written in generator exponents.
    DiscElement element_class(const QVec& y) const {
        check(y.size() == lattice_->rank(), errc::invalid_argument,
              "dual vector of wrong rank");
        check(is_dual_vector(y), errc::invalid_argument,
              "vector does not pair integrally with the lattice");
        std::size_t n = lattice_->rank();
        // Over Z^n / G Z^n the class of G*y has SNF coordinates U * (G*y).
        QVec gy = mul(to_rational(lattice_->gram()), y);
        IVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = numerator(gy[i]);
        IVec ux = mul(u_, x);
        DiscElement e;
        e.exponents.resize(invariant_factors_.size());
        for (std::size_t k = 0; k < invariant_factors_.size(); ++k) {
            e.exponents[k] = pos_mod(ux[gen_index_[k]], invariant_factors_[k]);
            if (e.exponents[k] != 0) {
                Integer f = invariant_factors_[k];
                e.order = lcm(e.order, f / gcd(f, e.exponents[k]));
            }
        }
        e.coset.resize(n);
        for (std::size_t i = 0; i < n; ++i) e.coset[i] = frac(y[i]);
        e.q_value = q_value(y);
        return e;
    }

private:
    const IntegralLattice* lattice_;
    IVec snf_diag_;
    IMat u_;
    IVec invariant_factors_;          // the diagonal entries > 1
    std::vector<std::size_t> gen_index_;  // their positions in the SNF diagonal
    std::vector<QVec> generators_;
    QVec qform_values_;
};

inline DiscriminantGroup discriminant_group(const IntegralLattice& L) {
    return DiscriminantGroup(L);
}

enum class ReflectionKind { Identity, MinusIdentity, Other, NotIntegral };

inline const char* to_string(ReflectionKind k) {
    switch (k) {
        case ReflectionKind::Identity:      return "Identity";
        case ReflectionKind::MinusIdentity: return "MinusIdentity";
        case ReflectionKind::Other:         return "Other";
        case ReflectionKind::NotIntegral:   return "NotIntegral";
    }
    return "?";
}

// Classifies the reflection sigma_r(x) = x - (2(x,r)/(r,r)) r: first whether
// it preserves L at all, then the map it induces on D(L).
inline ReflectionKind reflection_action(const IntegralLattice& L, const LatticeVector& r) {
    check(!r.is_zero(), errc::zero_vector, "reflection in the zero vector");
    check(r.is_primitive(), errc::non_primitive, "reflection vector must be primitive");
    Integer rr = r.norm();
    check(rr != 0, errc::invalid_argument, "reflection in an isotropic vector");

    Integer dv = divisor_of(r);
    // (r, r) lies in the pairing ideal, so div(r) | r^2 always.
    assert_internal(rr % dv == 0, "div(r) does not divide r^2");

    // sigma_r is integral on L  <=>  r^2 | 2(e_i, r) for every basis vector,
    // i.e. r^2 | 2 div(r)  (r is primitive).
    if ((2 * dv) % rr != 0) return ReflectionKind::NotIntegral;

    DiscriminantGroup D(L);
    QMat g = to_rational(L.gram());
    QVec rq(r.coords.size());
    for (std::size_t i = 0; i < rq.size(); ++i) rq[i] = Rational(r.coords[i]);
    bool all_plus = true, all_minus = true;
    for (const QVec& y : D.generators()) {
        Rational c = 2 * bilinear(y, g, rq) / Rational(rr);
        // image - y = -c r ; image + y = 2 y - c r
        for (std::size_t i = 0; i < rq.size(); ++i) {
            if (denominator(c * rq[i]) != 1) all_plus = false;
            if (denominator(2 * y[i] - c * rq[i]) != 1) all_minus = false;
        }
        if (!all_plus && !all_minus) break;
    }
    if (all_plus) return ReflectionKind::Identity;
    if (all_minus) return ReflectionKind::MinusIdentity;
    return ReflectionKind::Other;
}

struct EichlerInvariant {
    Integer norm;
    Integer divisor;
    DiscElement star_class;  // class of v / div(v) in D(L)
};

// The two invariants (v^2, [v/div(v)]) that pin down the stable orbit of a
// primitive vector when L contains two orthogonal hyperbolic planes (that
// hypothesis is the caller's; it is recorded, not verified, here).
inline EichlerInvariant eichler_invariant(const IntegralLattice& L, const LatticeVector& v) {
    check(!v.is_zero(), errc::zero_vector, "Eichler invariant of the zero vector");
    check(v.is_primitive(), errc::non_primitive, "Eichler invariant needs a primitive vector");
    EichlerInvariant e;
    e.norm = v.norm();
    e.divisor = divisor_of(v);
    QVec y(v.coords.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = Rational(v.coords[i]) / Rational(e.divisor);
    DiscriminantGroup D(L);
    e.star_class = D.element_class(y);
    return e;
}

}  // namespace klat
