#pragma once

// Reid-Tai sums for finite-order linear group elements given by eigenvalue
// exponents, the quasi-reflection-aware modification, and the group-level
// canonical-singularity verdict.  All sums are exact rationals.

#include <klat/errors.hpp>
#include <klat/numeric.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

namespace klat {

// A finite-order element presented by its order m and eigenvalue exponents
// a_i (eigenvalues zeta_m^{a_i}).  Exponents are stored reduced mod m.
struct IsotropyElement {
    long long order = 1;
    std::vector<long long> exponents;

    IsotropyElement(long long m, std::vector<long long> exps)
        : order(m), exponents(std::move(exps)) {
        check(order >= 1, errc::invalid_order, "order must be >= 1");
        check(!exponents.empty(), errc::invalid_argument, "element needs at least one exponent");
        long long g = order;
        for (long long& a : exponents) {
            a %= order;
            if (a < 0) a += order;
            g = std::gcd(g, a);
        }
        check(order == 1 || g == 1, errc::invalid_order,
              "exponents share a factor with the order: the true order is smaller");
    }

    bool is_identity() const { return order == 1; }

    std::size_t nonzero_exponents() const {
        std::size_t k = 0;
        for (long long a : exponents)
            if (a != 0) ++k;
        return k;
    }

    // Exactly one eigenvalue != 1.
    bool is_quasi_reflection() const { return nonzero_exponents() == 1; }

    // Quasi-reflection whose nontrivial eigenvalue is -1.
    bool is_reflection() const {
        if (!is_quasi_reflection()) return false;
        for (long long a : exponents)
            if (a != 0) return 2 * a == order;
        return false;
    }

    // g^k, with exponents renormalised to the true order m / gcd(m, k).
    IsotropyElement power(long long k) const {
        k %= order;
        if (k < 0) k += order;
        if (k == 0) return IsotropyElement(1, std::vector<long long>(exponents.size(), 0));
        long long g = std::gcd(order, k);
        std::vector<long long> exps(exponents.size());
        for (std::size_t i = 0; i < exps.size(); ++i)
            exps[i] = (exponents[i] * k % order) / g;
        return IsotropyElement(order / g, std::move(exps));
    }
};

// Sum of fractional parts {a_i / m}; the identity counts as 1.
inline Rational rt_sum(const IsotropyElement& g) {
    if (g.is_identity()) return Rational(1);
    Rational s(0);
    for (long long a : g.exponents) s += Rational(a, g.order);  // a already in [0, m)
    return s;
}

// The data behind the modified sum: the smallest k >= 1 with g^k a
// quasi-reflection or the identity, the cofactor s = m / k, and the pivot
// index carrying the non-1 eigenvalue of g^k (n of them when g^k = 1, in
// which case the pivot is immaterial and set to the last index).
struct ModifiedDecomposition {
    long long k = 1;
    long long s = 1;
    std::size_t pivot = 0;
};

inline ModifiedDecomposition modified_rt_decomposition(const IsotropyElement& g) {
    ModifiedDecomposition d;
    for (long long k = 1; k <= g.order; ++k) {
        std::size_t nonzero = 0, last = g.exponents.size() - 1;
        for (std::size_t i = 0; i < g.exponents.size(); ++i)
            if (g.exponents[i] * k % g.order != 0) { ++nonzero; last = i; }
        if (nonzero <= 1) {
            d.k = k;
            d.pivot = last;
            break;
        }
    }
    assert_internal(g.order % d.k == 0, "quasi-reflection power index does not divide the order");
    d.s = g.order / d.k;
    return d;
}

struct RtVerdict {
    Rational sigma;
    Rational sigma_prime;
    bool is_quasi_reflection = false;
    bool is_reflection = false;
    bool passes = false;
};

// Modified Reid-Tai sum: with h = g^k the first quasi-reflection (or
// identity) power and m = s k, the pivot exponent enters as {s a_n / m} and
// the rest as plain fractional parts.  Quasi-reflections and the identity
// themselves get sigma_prime = 1: the element they induce on the quotient
// by <h> is the identity coset, whose sum is 1 by convention.
inline RtVerdict modified_rt_sum(const IsotropyElement& g) {
    RtVerdict v;
    v.sigma = rt_sum(g);
    v.is_quasi_reflection = g.is_quasi_reflection();
    v.is_reflection = g.is_reflection();
    if (g.is_identity() || v.is_quasi_reflection) {
        v.sigma_prime = Rational(1);
    } else {
        ModifiedDecomposition d = modified_rt_decomposition(g);
        Rational s(0);
        for (std::size_t i = 0; i < g.exponents.size(); ++i) {
            long long a = g.exponents[i];
            if (i == d.pivot)
                s += Rational(d.s * a % g.order, g.order);
            else
                s += Rational(a, g.order);
        }
        v.sigma_prime = s;
    }
    v.passes = v.sigma_prime >= 1;
    return v;
}

enum class GroupVerdict { Canonical, NotCanonical, Unknown };

inline const char* to_string(GroupVerdict v) {
    switch (v) {
        case GroupVerdict::Canonical:    return "Canonical";
        case GroupVerdict::NotCanonical: return "NotCanonical";
        case GroupVerdict::Unknown:      return "Unknown";
    }
    return "?";
}

// Group-level criterion.  Without quasi-reflections the plain sums decide
// both ways; with them, passing modified sums certify Canonical but a
// failure only yields Unknown.  contains_all_elements is the caller's
// assertion; the only sanity check performed is closure of element orders
// (products are never formed).
inline GroupVerdict group_verdict(const std::vector<IsotropyElement>& elements,
                                  bool contains_all_elements) {
    check(!elements.empty(), errc::empty_group, "group verdict over an empty list");
    if (contains_all_elements) {
        std::set<long long> orders;
        for (const IsotropyElement& g : elements) orders.insert(g.order);
        for (const IsotropyElement& g : elements)
            for (long long j = 1; j <= g.order; ++j)
                check(orders.count(g.order / std::gcd(g.order, j)) == 1, errc::invalid_argument,
                      "element orders are not closed under powers");
    }
    bool any_qr = false;
    for (const IsotropyElement& g : elements)
        if (g.is_quasi_reflection()) { any_qr = true; break; }
    if (!any_qr) {
        for (const IsotropyElement& g : elements)
            if (rt_sum(g) < 1) return GroupVerdict::NotCanonical;
        return GroupVerdict::Canonical;
    }
    for (const IsotropyElement& g : elements)
        if (!modified_rt_sum(g).passes) return GroupVerdict::Unknown;
    return GroupVerdict::Canonical;
}

}  // namespace klat
