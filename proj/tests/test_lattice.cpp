#include <catch2/catch_amalgamated.hpp>

#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/lattice_spec.hpp>

#include <functional>

#include "support.hpp"

using namespace klat;
using testsupport::make_rng;
using testsupport::random_unimodular;
using testsupport::throws_code;
using testsupport::unimodular_inverse;

namespace {

LatticeVector vec(const IntegralLattice& L, std::vector<long long> c) {
    IVec coords;
    coords.reserve(c.size());
    for (long long v : c) coords.push_back(v);
    return LatticeVector(L, std::move(coords));
}

}  // namespace

TEST_CASE("named lattices have the classical invariants", "[lattice]") {
    CHECK(lattice_U().det() == -1);
    CHECK(lattice_U().even());
    for (int n = 1; n <= 7; ++n) {
        IntegralLattice a = lattice_A(n);
        CHECK(a.det() == n + 1);
        CHECK(a.even());
        CHECK(a.rank() == static_cast<std::size_t>(n));
    }
    for (int n = 2; n <= 9; ++n) CHECK(lattice_D(n).det() == 4);
    CHECK(lattice_E(6).det() == 3);
    CHECK(lattice_E(7).det() == 2);
    CHECK(lattice_E(8).det() == 1);
    CHECK(lattice_A(2).gram() == IMat::from_rows({{2, -1}, {-1, 2}}));
    CHECK(lattice_scalar(-4).gram() == IMat::from_rows({{-4}}));
    CHECK(lattice_scalar(-4).label() == "<-4>");
    CHECK_FALSE(lattice_scalar(3).even());
}

TEST_CASE("rescale and direct sums", "[lattice]") {
    IntegralLattice e8m = rescale(lattice_E(8), -1);
    CHECK(e8m.label() == "E8(-1)");
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(e8m.gram()(i, j) == -lattice_E(8).gram()(i, j));

    IntegralLattice s = direct_sum(lattice_U(), lattice_E(8));
    CHECK(s.rank() == 10);
    CHECK(s.label() == "U+E8");
    CHECK(s.gram()(0, 1) == 1);
    CHECK(s.gram()(2, 2) == 2);
    CHECK(s.gram()(0, 2) == 0);
    CHECK(s.det() == -1);
}

TEST_CASE("lattice_info on standard examples", "[lattice]") {
    LatticeInfo u = lattice_info(lattice_U());
    CHECK(u.det == -1);
    CHECK(u.signature == std::make_pair(std::size_t{1}, std::size_t{1}));
    CHECK(u.even);

    LatticeInfo e8 = lattice_info(lattice_E(8));
    CHECK(e8.det == 1);
    CHECK(e8.signature == std::make_pair(std::size_t{8}, std::size_t{0}));
    CHECK(e8.even);

    LatticeInfo l2 = lattice_info(parse_lattice_spec("2U+2E8(-1)+<-2>"));
    CHECK(l2.rank == 21);
    CHECK(l2.det == -2);
    CHECK(l2.signature == std::make_pair(std::size_t{2}, std::size_t{19}));
    CHECK(l2.even);
}

TEST_CASE("vector content, primitivity and divisor", "[lattice]") {
    IntegralLattice U = lattice_U();
    for (long long d : {1, 3, 46}) {
        LatticeVector h = vec(U, {1, d});
        CHECK(h.norm() == 2 * d);
        CHECK(h.is_primitive());
        CHECK(divisor_of(h) == 1);
    }

    for (long long d : {1, 5, 46}) {
        IntegralLattice L = parse_lattice_spec("2U+2E8(-1)+<-" + std::to_string(2 * d) + ">");
        IVec c(21, 0);
        c[20] = 1;
        LatticeVector g(L, c);
        CHECK(g.norm() == -2 * d);
        CHECK(divisor_of(g) == 2 * d);
    }

    IntegralLattice E8 = lattice_E(8);
    CHECK(divisor_of(vec(E8, {1, 0, 0, 0, 0, 0, 0, 0})) == 1);
    CHECK(divisor_of(vec(E8, {2, 3, 4, 6, 5, 4, 3, 2})) == 1);

    LatticeVector w = vec(U, {2, 4});
    CHECK(w.content() == 2);
    CHECK_FALSE(w.is_primitive());
    CHECK(vec(U, {0, 0}).is_zero());
    CHECK(throws_code(errc::zero_vector, [&] { divisor_of(vec(U, {0, 0})); }));
    CHECK(throws_code(errc::invalid_argument, [&] { vec(U, {1, 2, 3}); }));
}

TEST_CASE("lattice constructor validates its Gram matrix", "[lattice]") {
    CHECK(throws_code(errc::degenerate_lattice,
                      [] { IntegralLattice(IMat::from_rows({{1, 1}, {1, 1}})); }));
    CHECK(throws_code(errc::invalid_argument,
                      [] { IntegralLattice(IMat::from_rows({{0, 1}, {2, 0}})); }));
    CHECK(throws_code(errc::invalid_argument, [] { IntegralLattice(IMat(2, 3)); }));
}

TEST_CASE("orthogonal complement of a polarisation vector", "[lattice][complement]") {
    IntegralLattice k3 = parse_lattice_spec("3U+2E8(-1)");
    REQUIRE(k3.rank() == 22);
    for (long long d : {1, 46}) {
        IVec c(22, 0);
        c[0] = 1;
        c[1] = d;
        OrthogonalComplement oc = orthogonal_complement(k3, {LatticeVector(k3, c)});
        CHECK(oc.sublattice->rank() == 21);
        LatticeInfo info = lattice_info(*oc.sublattice);
        CHECK(info.abs_det == 2 * d);
        CHECK(info.even);
        CHECK(info.signature == std::make_pair(std::size_t{2}, std::size_t{19}));
        // Embedding columns must be orthogonal to h inside the big lattice.
        for (std::size_t j = 0; j < oc.embedding.cols(); ++j) {
            IVec col(22);
            for (std::size_t i = 0; i < 22; ++i) col[i] = oc.embedding(i, j);
            CHECK(bilinear(c, k3.gram(), col) == 0);
        }
    }
}

TEST_CASE("orthogonal complement in a small odd setting", "[lattice][complement]") {
    // U + <-2>, h = 2(e + c f) + l, so h^2 = 8c - 2; c = 1 gives h^2 = 6.
    IntegralLattice L = direct_sum(lattice_U(), lattice_scalar(-2));
    for (long long c : {1, 2, 12}) {
        LatticeVector h = vec(L, {2, 2 * c, 1});
        CHECK(h.norm() == 8 * c - 2);
        CHECK(divisor_of(h) == 2);
        OrthogonalComplement oc = orthogonal_complement(L, {h});
        CHECK(oc.sublattice->rank() == 2);
        CHECK(abs(oc.sublattice->det()) == 4 * c - 1);
    }
}

TEST_CASE("orthogonal complement edge cases", "[lattice][complement]") {
    IntegralLattice E8 = lattice_E(8);
    OrthogonalComplement whole = orthogonal_complement(E8, {});
    CHECK(whole.sublattice->gram() == E8.gram());
    CHECK(whole.embedding == IMat::identity(8));

    IntegralLattice U = lattice_U();
    CHECK(throws_code(errc::degenerate_span,
                      [&] { orthogonal_complement(U, {vec(U, {1, 0})}); }));
    IntegralLattice A2 = lattice_A(2);
    LatticeVector a = vec(A2, {1, 0});
    CHECK(throws_code(errc::degenerate_span, [&] { orthogonal_complement(A2, {a, a}); }));

    // The result only depends on the span of S.
    IntegralLattice D4 = lattice_D(4);
    LatticeVector r1 = vec(D4, {1, 0, 0, 0});
    LatticeVector r2 = vec(D4, {0, 1, 0, 0});
    LatticeVector r12 = vec(D4, {1, 1, 0, 0});
    OrthogonalComplement oc1 = orthogonal_complement(D4, {r1, r2});
    OrthogonalComplement oc2 = orthogonal_complement(D4, {r12, r2});
    CHECK(oc1.sublattice->gram() == oc2.sublattice->gram());
    CHECK(oc1.embedding == oc2.embedding);
}

TEST_CASE("complement determinant follows the index formula", "[lattice][property]") {
    // For primitive h with h^2 != 0: |det(h^perp)| * div(h)^2 == |h^2 * det L|.
    auto gen = make_rng(0x5eed0010);
    std::vector<IntegralLattice> pool = {
        direct_sum(lattice_U(), lattice_A(2)),
        direct_sum(lattice_U(), lattice_scalar(-6)),
        lattice_D(4),
        direct_sum(lattice_A(3), lattice_scalar(2)),
        lattice_E(6),
    };
    int checked = 0;
    std::uniform_int_distribution<int> entry(-3, 3);
    for (const IntegralLattice& L : pool) {
        int done = 0;
        while (done < 8) {
            IVec c(L.rank());
            for (auto& x : c) x = entry(gen);
            LatticeVector h(L, c);
            if (h.is_zero()) continue;
            Integer g = h.content();
            for (auto& x : h.coords) x /= g;
            if (h.norm() == 0) continue;
            OrthogonalComplement oc = orthogonal_complement(L, {h});
            Integer dv = divisor_of(h);
            CHECK(abs(oc.sublattice->det()) * dv * dv == abs(h.norm() * L.det()));
            ++done;
            ++checked;
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("invariants do not depend on the choice of basis", "[lattice][property]") {
    auto gen = make_rng(0x5eed0011);
    std::vector<IntegralLattice> pool = {lattice_A(3), lattice_D(4),
                                         direct_sum(lattice_U(), lattice_scalar(2))};
    for (const IntegralLattice& L : pool) {
        for (int trial = 0; trial < 10; ++trial) {
            IMat t = random_unimodular(L.rank(), gen);
            IMat g2 = mul(transpose(t), mul(L.gram(), t));
            IntegralLattice M(g2);
            LatticeInfo a = lattice_info(L), b = lattice_info(M);
            CHECK(a.det == b.det);
            CHECK(a.signature == b.signature);
            CHECK(a.even == b.even);

            // Vectors transform by t^{-1}; divisor and norm are intrinsic.
            IMat tinv = unimodular_inverse(t);
            std::uniform_int_distribution<int> entry(-4, 4);
            IVec c(L.rank());
            for (auto& x : c) x = entry(gen);
            LatticeVector v(L, c);
            if (v.is_zero()) continue;
            LatticeVector w(M, mul(tinv, c));
            CHECK(v.norm() == w.norm());
            CHECK(divisor_of(v) == divisor_of(w));
        }
    }
}

TEST_CASE("isometries of a primitive sublattice extend by identity", "[lattice][property]") {
    // Reflection in a norm-2 root r acts as -1 on <r> and as the identity on
    // its complement; assembling the map from exact rational projections must
    // reproduce an integral isometry of the whole lattice.
    for (const IntegralLattice& L : {lattice_A(2), lattice_A(3), lattice_D(4)}) {
        IVec r(L.rank(), 0);
        r[0] = 1;
        REQUIRE(bilinear(r, L.gram(), r) == 2);
        const std::size_t n = L.rank();
        QMat map(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            IVec e(n, 0);
            e[j] = 1;
            Rational coeff = Rational(bilinear(e, L.gram(), r), 2);  // (e_j, r)/(r, r) * 2 / 2
            for (std::size_t i = 0; i < n; ++i) {
                Rational proj = coeff * Rational(r[i]);
                Rational rest = Rational(e[i]) - proj;
                map(i, j) = rest - proj;  // identity on r^perp, -1 on <r>
            }
        }
        QMat g = to_rational(L.gram());
        CHECK(mul(transpose(map), mul(g, map)) == g);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(denominator(map(i, j)) == 1);
    }
}
