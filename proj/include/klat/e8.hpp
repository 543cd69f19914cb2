#pragma once

// The E8 frame: simple roots in the Euclidean double-extension-of-D8 model,
// fundamental weights, the weight Gram matrix (inverse Cartan), and the
// coordinate changes between the simple-root basis and Euclidean R^8.
//
// Euclidean vectors are stored doubled (2*v), which keeps every coordinate
// an integer: E8 = D8 u (h + D8) with h = (e1+...+e8)/2, so doubled vectors
// have all-even or all-odd entries.

#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/matrix.hpp>

#include <cstddef>
#include <vector>

namespace klat {

class E8Frame {
public:
    E8Frame() : lattice_(lattice_E(8)) {
        // Simple roots, doubled: alpha1 = (e1+e8)/2 - (e2+...+e7)/2,
        // alpha2 = e1+e2, alpha_k = e_{k-1} - e_{k-2} for k = 3..8.
        simple2_ = IMat(8, 8);
        const int a1[8] = {1, -1, -1, -1, -1, -1, -1, 1};
        for (std::size_t i = 0; i < 8; ++i) simple2_(i, 0) = a1[i];
        simple2_(0, 1) = simple2_(1, 1) = 2;
        for (std::size_t k = 2; k < 8; ++k) {
            simple2_(k - 2, k) = -2;
            simple2_(k - 1, k) = 2;
        }
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                assert_internal(euclid_pair(column(simple2_, i), column(simple2_, j)) ==
                                    lattice_.gram()(i, j),
                                "simple roots do not realise the E8 Cartan matrix");

        // weight_gram = inverse Cartan matrix (integral: det C = 1).
        QMat winv = inverse(to_rational(lattice_.gram()));
        weight_gram_ = IMat(8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                assert_internal(denominator(winv(i, j)) == 1, "inverse Cartan not integral");
                weight_gram_(i, j) = numerator(winv(i, j));
            }

        // Doubled weights: 2*omega_j = sum_k W(k,j) * 2*alpha_k.
        weights2_ = mul(simple2_, weight_gram_);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                assert_internal(euclid_pair(column(simple2_, i), column(weights2_, j)) ==
                                    Integer(i == j ? 1 : 0),
                                "weights are not dual to the simple roots");
    }

    static const E8Frame& instance() {
        static const E8Frame frame;
        return frame;
    }

    const IntegralLattice& lattice() const noexcept { return lattice_; }
    const IMat& weight_gram() const noexcept { return weight_gram_; }

    // Doubled Euclidean coordinates of the i-th simple root / weight.
    IVec simple_root2(std::size_t i) const { return column(simple2_, i); }
    IVec weight2(std::size_t i) const { return column(weights2_, i); }

    // (u, v) for doubled vectors: the honest Euclidean pairing.
    static Integer euclid_pair(const IVec& u2, const IVec& v2) {
        Integer s = dot(u2, v2);
        assert_internal(s % 4 == 0, "pairing of E8 vectors is not integral");
        return s / 4;
    }

    // Simple-root coordinates -> doubled Euclidean coordinates.
    IVec to_euclid2(const IVec& alpha_coords) const { return mul(simple2_, alpha_coords); }

    // Doubled Euclidean coordinates -> simple-root coordinates; requires
    // membership in E8 (checked).
    IVec to_alpha(const IVec& v2) const {
        check(in_e8(v2), errc::invalid_argument, "vector is not in E8");
        IVec x(8);
        for (std::size_t i = 0; i < 8; ++i) x[i] = euclid_pair(v2, column(weights2_, i));
        return x;
    }

    // Membership of a doubled vector in E8 = D8 u (h + D8).
    static bool in_e8(const IVec& v2) {
        if (v2.size() != 8) return false;
        bool all_even = true, all_odd = true;
        Integer sum = 0;
        for (const Integer& c : v2) {
            if (c % 2 == 0) all_odd = false;
            else all_even = false;
            sum += c;
        }
        if (all_even) return (sum / 2) % 2 == 0;  // integral part: even coordinate sum
        if (all_odd) return pos_mod(sum, 4) == 0; // half-integral coset of D8
        return false;
    }

private:
    static IVec column(const IMat& m, std::size_t j) {
        IVec c(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
        return c;
    }

    IntegralLattice lattice_;
    IMat simple2_;       // column j = doubled alpha_{j+1}
    IMat weights2_;      // column j = doubled omega_{j+1}
    IMat weight_gram_;   // (omega_i, omega_j)
};

// Sum of fundamental weights with the given coefficients, as a vector in the
// simple-root basis of E8.
inline LatticeVector weight_vector(const std::vector<Integer>& coeffs) {
    check(coeffs.size() == 8, errc::invalid_argument, "weight_vector needs 8 coefficients");
    bool all_zero = true;
    for (const Integer& c : coeffs)
        if (c != 0) { all_zero = false; break; }
    check(!all_zero, errc::zero_vector, "weight_vector of all-zero coefficients");
    const E8Frame& f = E8Frame::instance();
    // x_k = sum_j c_j (C^-1)_{jk} = (W c)_k, integral since W is.
    IVec x = mul(f.weight_gram(), coeffs);
    return LatticeVector(f.lattice(), std::move(x));
}

}  // namespace klat
