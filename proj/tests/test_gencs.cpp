#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chaoskit/gencs.hpp"
#include "chaoskit/identities.hpp"

using namespace chaoskit;
using Catch::Matchers::WithinAbs;

TEST_CASE("gencs: q = 2 with identical covers is plain Cauchy-Schwarz") {
    GenCsInstance in;
    in.n_slots = 2;
    in.covers = {{1, 2}, {1, 2}};
    in.weights = {1.0, 1.0, 1.0};
    in.h.resize(2);
    in.h[0] = {1, 2, 3, 4, 5, 6, 7, 8, 9};       // 3x3 table
    in.h[1] = {2, 0, 1, -1, 3, 0, 4, 1, -2};
    const auto r = generalized_cs_check(in);

    double ip = 0.0, n0 = 0.0, n1 = 0.0;
    for (int k = 0; k < 9; ++k) {
        ip += in.h[0][k] * in.h[1][k];
        n0 += in.h[0][k] * in.h[0][k];
        n1 += in.h[1][k] * in.h[1][k];
    }
    CHECK_THAT(r.lhs, WithinAbs(std::abs(ip), 1e-12));
    CHECK_THAT(r.rhs_gencs, WithinAbs(std::sqrt(n0 * n1), 1e-12));
    // identical covers: the contraction is the scalar <h0, h1>
    CHECK_THAT(r.rhs_gencs1, WithinAbs(std::abs(ip), 1e-12));
    CHECK(r.lhs <= r.rhs_gencs1 + 1e-12);
    CHECK(r.rhs_gencs1 <= r.rhs_gencs + 1e-12);
}

TEST_CASE("gencs: triangle cover with indicator functions") {
    // c1 = {1,2}, c2 = {2,3}, c3 = {3,1}; h_i = indicator of the atom pair (0,1)
    GenCsInstance in;
    in.n_slots = 3;
    in.covers = {{1, 2}, {2, 3}, {1, 3}};
    in.weights = {1.0, 1.0};
    in.h.resize(3);
    for (auto& h : in.h) {
        h.assign(4, 0.0);
        h[0 * 2 + 1] = 1.0;  // h(0,1) = 1
    }
    const auto r = generalized_cs_check(in);

    // direct sum: the product is nonzero only when every projected pair is (0,1)
    double lhs = 0.0;
    for (int z1 = 0; z1 < 2; ++z1)
        for (int z2 = 0; z2 < 2; ++z2)
            for (int z3 = 0; z3 < 2; ++z3) {
                const double v = in.h[0][z1 * 2 + z2] * in.h[1][z2 * 2 + z3] *
                                 in.h[2][z1 * 2 + z3];
                lhs += v;
            }
    CHECK_THAT(r.lhs, WithinAbs(std::abs(lhs), 1e-14));
    CHECK(r.lhs <= r.rhs_gencs1 + 1e-12);
    CHECK(r.rhs_gencs1 <= r.rhs_gencs + 1e-12);
}

TEST_CASE("gencs: randomized property") {
    RngStream rng(101, "gencs-prop", 0);
    for (int t = 0; t < 100; ++t) {
        const auto in = random_gencs_instance(rng);
        const auto r = generalized_cs_check(in);
        const double scale = 1.0 + r.rhs_gencs;
        CHECK((r.rhs_gencs1 - r.lhs) / scale >= -1e-12);
        CHECK((r.rhs_gencs - r.rhs_gencs1) / scale >= -1e-12);
    }
}

TEST_CASE("gencs: cover validation") {
    GenCsInstance in;
    in.n_slots = 2;
    in.weights = {1.0};
    SECTION("element in only one set") {
        in.covers = {{1, 2}, {1}};
        in.h = {{0.0, 0.0}, {0.0}};
        CHECK_THROWS_AS(generalized_cs_check(in), std::invalid_argument);
    }
    SECTION("element in three sets") {
        in.covers = {{1, 2}, {1, 2}, {1}};
        CHECK_THROWS_AS(generalized_cs_check(in), std::invalid_argument);
    }
    SECTION("empty cover set") {
        in.covers = {{1, 2}, {1, 2}, {}};
        CHECK_THROWS_AS(generalized_cs_check(in), std::invalid_argument);
    }
}
