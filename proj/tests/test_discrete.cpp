#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chaoskit/chaos_form.hpp"
#include "chaoskit/tensor_io.hpp"

using namespace chaoskit;
using Catch::Matchers::WithinAbs;

namespace {

// unit-variance uniform off-diagonal form: a(i,j) = 1/sqrt(2 d (d-1)), i < j
ChaosForm uniform_form(int d) {
    ChaosForm a(2, d);
    const double c = 1.0 / std::sqrt(2.0 * d * (d - 1.0));
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) a.set({i, j}, c);
    return a;
}

// sign-split companion: a(i,j) = eps_i eps_j c with eps = +1 on the first
// half, -1 on the second; same variance, vanishing mixed contractions as d
// grows
ChaosForm sign_split_form(int d) {
    ChaosForm a(2, d);
    const double c = 1.0 / std::sqrt(2.0 * d * (d - 1.0));
    auto eps = [d](int i) { return i <= d / 2 ? 1.0 : -1.0; };
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) a.set({i, j}, eps(i) * eps(j) * c);
    return a;
}

}  // namespace

TEST_CASE("chaos form construction and invariants") {
    ChaosForm a(2, 4);
    a.set({2, 1}, 0.5);  // sorted on insert
    CHECK(a.at({1, 2}) == 0.5);
    CHECK_THROWS_AS(a.set({2, 2}, 0.1), std::invalid_argument);  // diagonal key
    CHECK_THROWS_AS(a.set({1, 5}, 0.1), std::invalid_argument);

    const auto [a1, a2] = counterexample_pair();
    CHECK_THAT(a1.variance(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(a2.variance(), WithinAbs(0.5, 1e-15));
    CHECK_FALSE(a1.is_unit_variance());
    CHECK(uniform_form(10).is_unit_variance());
}

TEST_CASE("evaluate_form") {
    const auto [a1, a2] = counterexample_pair();
    CHECK_THAT(evaluate_form(a1, {1, 1, 1, 1}), WithinAbs(1.0, 1e-15));
    CHECK_THAT(evaluate_form(a1, {1, 1, -1, 1}), WithinAbs(0.0, 1e-15));
    CHECK_THAT(evaluate_form(a2, {1, 1, -1, 1}), WithinAbs(1.0, 1e-15));

    SECTION("q = 1 is a linear form") {
        ChaosForm lin(1, 3);
        lin.set({2}, 2.0);
        CHECK(evaluate_form(lin, {5.0, 7.0, 9.0}) == 14.0);
    }
    SECTION("matches a dense double loop for small dims") {
        RngStream rng(5, "form-oracle", 0);
        ChaosForm a(2, 5);
        for (int i = 1; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) a.set({i, j}, 2.0 * rng.uniform01() - 1.0);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> x(5);
            for (auto& v : x) v = rng.normal();
            double direct = 0.0;
            for (int i = 1; i <= 5; ++i)
                for (int j = 1; j <= 5; ++j)
                    if (i != j) direct += a.at({i, j}) * x[i - 1] * x[j - 1];
            CHECK_THAT(evaluate_form(a, x), WithinAbs(direct, 1e-12));
        }
    }
}

TEST_CASE("influence") {
    const auto [a1, a2] = counterexample_pair();
    CHECK_THAT(influence(a1, 1), WithinAbs(0.125, 1e-15));  // 2 * (1/4)^2
    CHECK_THAT(influence(a1, 2), WithinAbs(0.0625, 1e-15));
    CHECK_THAT(influence(a1, 4), WithinAbs(0.0, 1e-15));
    CHECK_THAT(max_influence(a1), WithinAbs(0.125, 1e-15));
    CHECK_THAT(max_influence(a2), WithinAbs(0.125, 1e-15));

    const auto u = uniform_form(10);
    const double c2 = 1.0 / (2.0 * 10 * 9);
    CHECK_THAT(influence(u, 3), WithinAbs(9.0 * c2, 1e-14));

    ChaosForm single(2, 4);
    single.set({1, 3}, 0.7);
    CHECK_THAT(influence(single, 1), WithinAbs(0.49, 1e-15));
    CHECK_THAT(influence(single, 3), WithinAbs(0.49, 1e-15));
}

TEST_CASE("mixed_contraction_norm") {
    const auto [a1, a2] = counterexample_pair();
    // the two l-paths cancel at r = 1; supports are disjoint at r = 2
    CHECK(mixed_contraction_norm(a1, a2, 1) == 0.0);
    CHECK(mixed_contraction_norm(a1, a2, 2) == 0.0);

    ChaosForm single(2, 4);
    single.set({1, 2}, 0.3);
    CHECK_THAT(mixed_contraction_norm(single, single, 2), WithinAbs(2.0 * 0.09, 1e-15));
}

TEST_CASE("counterexample pair: exact moments by enumeration") {
    const auto [a1, a2] = counterexample_pair();
    const auto law = InnovationLaw::rademacher();

    // E Q_k^2 = 1/2 via M = 2, N = 0 style checks
    const auto gap11 = moment_gap_enumerate(a1, a2, 1, 1, law);
    CHECK_THAT(gap11.gap, WithinAbs(0.0, 1e-15));  // cross second moment

    const auto gap = moment_gap_enumerate(a1, a2, 2, 2, law);
    CHECK(gap.exact);
    CHECK(gap.gap == -0.25);  // 0 - (1/2)(1/2)

    // Q1 Q2 = 0 pointwise under Rademacher
    std::vector<double> x(4);
    for (int mask = 0; mask < 16; ++mask) {
        for (int i = 0; i < 4; ++i) x[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        CHECK(evaluate_form(a1, x) * evaluate_form(a2, x) == 0.0);
    }
}

TEST_CASE("moment_gap") {
    SECTION("disjoint variables gives exactly zero") {
        ChaosForm a(2, 8), b(2, 8);
        a.set({1, 2}, 0.5);
        b.set({5, 6}, -0.25);
        const auto gap = moment_gap_enumerate(a, b, 2, 2, InnovationLaw::rademacher());
        CHECK(gap.gap == 0.0);
    }
    SECTION("M = N = 1 equals the cross second moment") {
        ChaosForm a(2, 6), b(2, 6);
        a.set({1, 2}, 0.5);
        a.set({3, 4}, -0.5);
        b.set({1, 2}, 0.25);
        b.set({5, 6}, 0.5);
        const auto gap = moment_gap_enumerate(a, b, 1, 1, InnovationLaw::rademacher());
        // E[Q1 Q2] = 2! 2! sum_sorted a b = 4 * (0.5)(0.25)
        CHECK_THAT(gap.gap, WithinAbs(0.5, 1e-14));
    }
    SECTION("sampling mode agrees with enumeration") {
        const auto [a1, a2] = counterexample_pair();
        const auto mc = moment_gap_sample(a1, a2, 2, 2, InnovationLaw::rademacher(),
                                          40000, 13, 4);
        CHECK_THAT(mc.gap, WithinAbs(-0.25, 4.0 * mc.se));
    }
    SECTION("enumeration guardrails") {
        ChaosForm big(2, 30);
        big.set({1, 30}, 0.1);
        CHECK_THROWS_AS(moment_gap_enumerate(big, big, 2, 2, InnovationLaw::rademacher()),
                        std::invalid_argument);
        const auto [a1, a2] = counterexample_pair();
        CHECK_THROWS_AS(moment_gap_enumerate(a1, a2, 2, 2, InnovationLaw::gaussian()),
                        std::invalid_argument);
    }
}

TEST_CASE("moment-independence trend along a shrinking-influence family") {
    // all mixed contractions and influences decay, and the exact 2-2 moment
    // gap decreases monotonically along the family (the decay is slow, of the
    // order of the mixed contraction norms themselves)
    double first_gap = 0.0;
    double prev_gap = 1e9;
    for (int d : {8, 12, 16}) {
        const auto a1 = uniform_form(d);
        const auto a2 = sign_split_form(d);
        CHECK(mixed_contraction_norm(a1, a2, 1) < 1.0 / std::sqrt(d));
        CHECK(mixed_contraction_norm(a1, a2, 2) < 1.0 / d);
        CHECK(max_influence(a1) <= 1.0 / d + 1e-12);
        const auto gap = moment_gap_enumerate(a1, a2, 2, 2, InnovationLaw::rademacher());
        CHECK(std::abs(gap.gap) < prev_gap);
        prev_gap = std::abs(gap.gap);
        if (first_gap == 0.0) first_gap = std::abs(gap.gap);
    }
    CHECK(prev_gap < 0.85 * first_gap);
}

TEST_CASE("lindeberg_gap") {
    SECTION("gaussian innovations give delta exactly zero") {
        const auto a = uniform_form(6);
        const auto lg = lindeberg_gap(a, a, 2, 2, InnovationLaw::gaussian(), 2000, 3, 2);
        CHECK(lg.delta == 0.0);
    }
    SECTION("influence decay shrinks the Rademacher-vs-Gaussian gap") {
        const auto small = uniform_form(10);
        const auto large = uniform_form(50);
        const auto g10 = lindeberg_gap(small, small, 2, 2, InnovationLaw::rademacher(),
                                       150000, 99, 4);
        const auto g50 = lindeberg_gap(large, large, 2, 2, InnovationLaw::rademacher(),
                                       150000, 99, 4);
        CHECK(std::abs(g50.delta) < std::abs(g10.delta));
        // analytic check: delta(d) = 4 (8 - 6d) / (d (d-1)) for this family
        CHECK_THAT(g10.delta, WithinAbs(4.0 * (8.0 - 60.0) / 90.0, 5.0 * g10.se));
        CHECK_THAT(g50.delta, WithinAbs(4.0 * (8.0 - 300.0) / 2450.0, 5.0 * g50.se));
    }
    SECTION("counterexample pair: delta stays large") {
        const auto [a1, a2] = counterexample_pair();
        const auto lg =
            lindeberg_gap(a1, a2, 2, 2, InnovationLaw::rademacher(), 60000, 7, 4);
        // gap_G = 0 exactly in expectation, gap_X = -1/4
        CHECK_THAT(lg.delta, WithinAbs(-0.25, 5.0 * lg.se));
        CHECK(std::abs(lg.delta) > 0.1);
    }
}

TEST_CASE("innovation laws") {
    const auto rad = InnovationLaw::rademacher();
    CHECK(rad.moment(3) == 0.0);
    CHECK(rad.moment(4) == 1.0);
    const auto gauss = InnovationLaw::gaussian();
    CHECK(gauss.moment(4) == 3.0);
    CHECK(gauss.moment(6) == 15.0);

    const auto user = InnovationLaw::user({0.0, 1.0, 0.5, 3.2});
    CHECK(user.moment(3) == 0.5);
    CHECK_THROWS_AS(user.moment(5), std::invalid_argument);
    CHECK_THROWS_AS(user.require_moments(8), std::invalid_argument);
    CHECK_FALSE(user.sampleable());
    CHECK_THROWS_AS(InnovationLaw::user({0.1, 1.0}), std::invalid_argument);

    RngStream rng(1, "law", 0);
    CHECK_THROWS_AS(user.sample(rng), std::invalid_argument);
}

TEST_CASE("discrete forms bridge to the continuous sampler") {
    RngStream rng(21, "bridge", 0);
    ChaosForm a(3, 6);
    for (int t = 0; t < 8; ++t) {
        MultiIndex m = {1 + static_cast<int>(rng.next_u64() % 6),
                        1 + static_cast<int>(rng.next_u64() % 6),
                        1 + static_cast<int>(rng.next_u64() % 6)};
        std::sort(m.begin(), m.end());
        if (m[0] == m[1] || m[1] == m[2]) continue;
        a.set(m, 2.0 * rng.uniform01() - 1.0);
    }
    const auto tensor = a.as_symmetric_tensor();
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> g(6);
        for (auto& v : g) v = rng.normal();
        const double lhs = evaluate_form(a, g);
        const double rhs = evaluate_chaos(tensor, g);
        CHECK_THAT(rhs, WithinAbs(lhs, 1e-10 * (1.0 + std::abs(lhs))));
    }
}

TEST_CASE("forms load from the tensor literal format") {
    const auto t = parse_tensor("2 4\n1 2 0.25\n1 3 0.25\n");
    const auto form = ChaosForm::from_symmetric_tensor(t);
    CHECK(form.at({1, 2}) == 0.25);
    // diagonal entries are rejected when viewed as a form
    const auto bad = parse_tensor("2 4\n2 2 0.5\n");
    CHECK_THROWS_AS(ChaosForm::from_symmetric_tensor(bad), std::invalid_argument);
}
