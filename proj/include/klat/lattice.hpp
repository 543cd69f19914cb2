#pragma once

// Integral lattices presented by Gram matrices, vectors in a fixed basis,
// and the first layer of arithmetic: invariants (determinant, signature,
// evenness), pairing divisors, and canonical orthogonal complements.

#include <klat/errors.hpp>
#include <klat/matrix.hpp>
#include <klat/numeric.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace klat {

// A nondegenerate integral symmetric bilinear form on Z^rank.  The Gram
// matrix is the sole representation; named constructions live below.
class IntegralLattice {
public:
    explicit IntegralLattice(IMat gram, std::string label = "")
        : gram_(std::move(gram)), label_(std::move(label)) {
        check(gram_.rows() == gram_.cols() && gram_.rows() > 0, errc::invalid_argument,
              "Gram matrix must be square and nonempty");
        check(is_symmetric(gram_), errc::invalid_argument, "Gram matrix must be symmetric");
        det_ = klat::det(gram_);
        check(det_ != 0, errc::degenerate_lattice, "Gram determinant is zero");
        even_ = true;
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            if (gram_(i, i) % 2 != 0) { even_ = false; break; }
    }

    std::size_t rank() const noexcept { return gram_.rows(); }
    const IMat& gram() const noexcept { return gram_; }
    const Integer& det() const noexcept { return det_; }
    bool even() const noexcept { return even_; }
    const std::string& label() const noexcept { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    bool operator==(const IntegralLattice& o) const { return gram_ == o.gram_; }

private:
    IMat gram_;
    std::string label_;
    Integer det_;
    bool even_;
};

// An integer coordinate tuple in a lattice's basis.  Holds a pointer to the
// lattice, which must outlive the vector.
struct LatticeVector {
    const IntegralLattice* lattice = nullptr;
    IVec coords;

    LatticeVector() = default;
    LatticeVector(const IntegralLattice& lat, IVec c) : lattice(&lat), coords(std::move(c)) {
        check(coords.size() == lat.rank(), errc::invalid_argument,
              "coordinate length differs from lattice rank");
    }

    bool is_zero() const {
        for (const Integer& c : coords)
            if (c != 0) return false;
        return true;
    }

    // gcd of the coordinates; a vector is primitive iff this is 1.
    Integer content() const {
        Integer g = 0;
        for (const Integer& c : coords) g = gcd(g, c);
        return g;
    }
    bool is_primitive() const { return content() == 1; }

    Integer norm() const { return bilinear(coords, lattice->gram(), coords); }

    Integer pair(const LatticeVector& other) const {
        assert_internal(lattice == other.lattice, "pairing vectors from different lattices");
        return bilinear(coords, lattice->gram(), other.coords);
    }

    bool operator==(const LatticeVector& o) const { return coords == o.coords; }
};

struct LatticeInfo {
    Integer det;
    Integer abs_det;
    std::pair<std::size_t, std::size_t> signature;  // (positive, negative)
    bool even = false;
    std::size_t rank = 0;
};

inline LatticeInfo lattice_info(const IntegralLattice& L) {
    LatticeInfo info;
    info.det = L.det();
    info.abs_det = abs(L.det());
    info.even = L.even();
    info.rank = L.rank();
    std::size_t p = 0, q = 0;
    bool ok = signature(L.gram(), p, q);
    check(ok, errc::degenerate_lattice, "signature of a degenerate form");
    assert_internal(p + q == L.rank(), "signature ranks do not add up");
    info.signature = {p, q};
    return info;
}

// Positive generator of the pairing ideal (v, L) = {(v, x) : x in L}; equals
// the gcd of the entries of gram * coords.
inline Integer divisor_of(const LatticeVector& v) {
    check(!v.is_zero(), errc::zero_vector, "divisor of the zero vector");
    IVec w = mul(v.lattice->gram(), v.coords);
    Integer g = 0;
    for (const Integer& x : w) g = gcd(g, x);
    assert_internal(g != 0, "pairing ideal of a nonzero vector is zero");
    return g;
}

struct OrthogonalComplement {
    std::shared_ptr<IntegralLattice> sublattice;  // induced Gram in the canonical basis
    IMat embedding;  // columns: the canonical (HNF) basis, in L's coordinates
};

// {x in L : (x, s) = 0 for all s in S} with its induced Gram matrix.  The
// basis is canonicalised via Hermite normal form, so the output depends only
// on the span of S, not on the listed generators.
inline OrthogonalComplement orthogonal_complement(const IntegralLattice& L,
                                                  const std::vector<LatticeVector>& S) {
    std::size_t n = L.rank(), m = S.size();
    if (m == 0) {
        return {std::make_shared<IntegralLattice>(L.gram(), L.label()), IMat::identity(n)};
    }
    IMat sbasis(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        check(S[j].coords.size() == n, errc::invalid_argument, "constraint vector of wrong rank");
        for (std::size_t i = 0; i < n; ++i) sbasis(i, j) = S[j].coords[i];
    }
    // Degenerate (or dependent) span <=> the restricted form is singular.
    IMat span_gram = mul(transpose(sbasis), mul(L.gram(), sbasis));
    check(det(span_gram) != 0, errc::degenerate_span,
          "the form restricted to span(S) is degenerate");

    IMat pairings = mul(transpose(sbasis), L.gram());  // rows: x -> (s_j, x)
    IMat basis = integer_kernel(pairings);
    assert_internal(basis.cols() == n - m, "orthogonal complement has unexpected rank");
    IMat gram = mul(transpose(basis), mul(L.gram(), basis));
    return {std::make_shared<IntegralLattice>(std::move(gram)), basis};
}

// ---- named lattices ----------------------------------------------------

// Hyperbolic plane U: even unimodular of signature (1,1).
inline IntegralLattice lattice_U() {
    return IntegralLattice(IMat::from_rows({{0, 1}, {1, 0}}), "U");
}

// Rank-1 lattice <k>.
inline IntegralLattice lattice_scalar(const Integer& k) {
    check(k != 0, errc::degenerate_lattice, "rank-1 lattice <0> is degenerate");
    IMat g(1, 1);
    g(0, 0) = k;
    return IntegralLattice(std::move(g), "<" + k.str() + ">");
}

// Root lattice A_n (Cartan matrix), n >= 1.
inline IntegralLattice lattice_A(std::size_t n) {
    check(n >= 1, errc::invalid_argument, "A_n needs n >= 1");
    IMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return IntegralLattice(std::move(g), "A" + std::to_string(n));
}

// Root lattice D_n: chain 1..n-1 with node n forking off node n-2; n >= 2,
// with D2 = A1+A1 and D3 = A3 handled by the same Gram recipe.
inline IntegralLattice lattice_D(std::size_t n) {
    check(n >= 2, errc::invalid_argument, "D_n needs n >= 2");
    IMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
    for (std::size_t i = 0; i + 2 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
    if (n >= 3) g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
    return IntegralLattice(std::move(g), "D" + std::to_string(n));
}

// Root lattices E6, E7, E8: chain 1-3-4-5-...-n with node 2 attached to 4.
inline IntegralLattice lattice_E(std::size_t n) {
    check(n >= 6 && n <= 8, errc::invalid_argument, "E_n needs n in {6,7,8}");
    IMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
    auto link = [&](std::size_t a, std::size_t b) { g(a - 1, b - 1) = g(b - 1, a - 1) = -1; };
    link(1, 3);
    link(2, 4);
    for (std::size_t k = 3; k < n; ++k) link(k, k + 1);
    return IntegralLattice(std::move(g), "E" + std::to_string(n));
}

// L(m): the same free module with the form scaled by m != 0.
inline IntegralLattice rescale(const IntegralLattice& L, const Integer& m) {
    check(m != 0, errc::degenerate_lattice, "rescaling by zero");
    IMat g = L.gram();
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= m;
    std::string label = L.label().empty() ? "" : L.label() + "(" + m.str() + ")";
    return IntegralLattice(std::move(g), std::move(label));
}

inline IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts) {
    check(!parts.empty(), errc::invalid_argument, "direct sum of nothing");
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rank();
    IMat g(n, n);
    std::string label;
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
        if (!label.empty()) label += "+";
        label += p.label();
        off += p.rank();
    }
    return IntegralLattice(std::move(g), std::move(label));
}

inline IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
    return direct_sum(std::vector<IntegralLattice>{a, b});
}

}  // namespace klat
