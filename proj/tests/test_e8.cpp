#include <catch2/catch_amalgamated.hpp>

#include <klat/e8.hpp>
#include <klat/enumerate.hpp>

#include "support.hpp"

using namespace klat;
using testsupport::make_rng;
using testsupport::throws_code;

namespace {

std::vector<Integer> coeffs(std::initializer_list<long long> c) {
    std::vector<Integer> out;
    for (long long v : c) out.push_back(v);
    return out;
}

// Pairings of the fundamental weights, row i = (w_i, w_j).
const IMat kWeightGram = IMat::from_rows({
    {4, 5, 7, 10, 8, 6, 4, 2},
    {5, 8, 10, 15, 12, 9, 6, 3},
    {7, 10, 14, 20, 16, 12, 8, 4},
    {10, 15, 20, 30, 24, 18, 12, 6},
    {8, 12, 16, 24, 20, 15, 10, 5},
    {6, 9, 12, 18, 15, 12, 8, 4},
    {4, 6, 8, 12, 10, 8, 6, 3},
    {2, 3, 4, 6, 5, 4, 3, 2},
});

}  // namespace

TEST_CASE("the weight pairing matrix", "[e8]") {
    const E8Frame& f = E8Frame::instance();
    REQUIRE(f.weight_gram().rows() == 8);
    CHECK(f.weight_gram() == kWeightGram);
    // It is the inverse of the Cartan matrix of the frame's lattice.
    QMat prod = mul(to_rational(f.lattice().gram()), to_rational(f.weight_gram()));
    CHECK(prod == QMat::identity(8));
}

TEST_CASE("weights are dual to the simple roots", "[e8]") {
    const E8Frame& f = E8Frame::instance();
    for (std::size_t i = 0; i < 8; ++i) {
        IVec a = f.simple_root2(i);
        CHECK(E8Frame::euclid_pair(a, a) == 2);
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(E8Frame::euclid_pair(a, f.weight2(j)) == (i == j ? 1 : 0));
    }
}

TEST_CASE("norms of the named weight vectors", "[e8]") {
    // The first norm is 92 = 2*46; the d-values of the five vectors are
    // 46, 50, 54, 57, 52.
    CHECK(weight_vector(coeffs({1, 0, 0, 1, 0, 0, 1, 0})).norm() == 92);
    CHECK(weight_vector(coeffs({0, 0, 0, 1, 0, 1, 0, 1})).norm() == 100);
    CHECK(weight_vector(coeffs({0, 0, 1, 0, 1, 0, 1, 0})).norm() == 108);
    CHECK(weight_vector(coeffs({1, 0, 0, 1, 0, 1, 0, 0})).norm() == 114);
    CHECK(weight_vector(coeffs({1, 1, 0, 0, 1, 0, 0, 1})).norm() == 104);
}

TEST_CASE("doubled coordinates round-trip through the frame", "[e8]") {
    const E8Frame& f = E8Frame::instance();
    std::vector<LatticeVector> roots = vectors_of_norm(f.lattice(), 2);
    REQUIRE(roots.size() == 240);
    for (const LatticeVector& r : roots) {
        IVec v2 = f.to_euclid2(r.coords);
        CHECK(E8Frame::in_e8(v2));
        CHECK(E8Frame::euclid_pair(v2, v2) == 2);
        CHECK(f.to_alpha(v2) == r.coords);
    }
}

TEST_CASE("euclidean pairing matches the Gram pairing", "[e8]") {
    const E8Frame& f = E8Frame::instance();
    auto gen = make_rng(0x5eedE8);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        IVec a(8), b(8);
        for (std::size_t i = 0; i < 8; ++i) {
            a[i] = entry(gen);
            b[i] = entry(gen);
        }
        CHECK(E8Frame::euclid_pair(f.to_euclid2(a), f.to_euclid2(b)) ==
              bilinear(a, f.lattice().gram(), b));
    }
}

TEST_CASE("membership test for doubled coordinates", "[e8]") {
    CHECK(E8Frame::in_e8(IVec{1, 1, 1, 1, 1, 1, 1, 1}));       // all odd, sum 8
    CHECK(E8Frame::in_e8(IVec{2, 2, 0, 0, 0, 0, 0, 0}));       // all even, sum/2 even
    CHECK(E8Frame::in_e8(IVec{-2, 2, 0, 0, 0, 0, 0, 0}));
    CHECK_FALSE(E8Frame::in_e8(IVec{1, 1, 1, 1, 1, 1, 1, -1}));  // odd, sum 6
    CHECK_FALSE(E8Frame::in_e8(IVec{2, 0, 0, 0, 0, 0, 0, 0}));   // sum/2 odd
    CHECK_FALSE(E8Frame::in_e8(IVec{1, 2, 0, 0, 0, 0, 0, 0}));   // mixed parity
    CHECK(throws_code(errc::invalid_argument, [&] {
        E8Frame::instance().to_alpha(IVec{2, 0, 0, 0, 0, 0, 0, 0});
    }));
}

TEST_CASE("weight_vector validates its input", "[e8]") {
    CHECK(throws_code(errc::invalid_argument, [] { weight_vector({Integer(1)}); }));
    CHECK(throws_code(errc::zero_vector,
                      [] { weight_vector(std::vector<Integer>(8, Integer(0))); }));
}
