#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "chaoskit/identities.hpp"

using namespace chaoskit;

namespace {

// Flips the sign of every second symmetrization. An all-flips mutant would be
// invisible to the bilinear identities (both sides change sign together), so
// the alternation guarantees mismatched signs inside a single identity.
SymmetrizeFn alternating_sign_mutant() {
    auto counter = std::make_shared<int>(0);
    return [counter](const BipartiteTensor& t) {
        const bool flip = ((*counter)++ % 2) == 0;
        auto s = symmetrize(t);
        return flip ? scale(s, -1.0) : s;
    };
}

}  // namespace

TEST_CASE("identity suite passes at 200 trials") {
    const auto res = run_identity_suite(2024, 200);
    CHECK(res.pass);
    CHECK(res.max_sym_norm_residual <= 1e-10);
    CHECK(res.max_four_tensor_residual <= 1e-10);
    CHECK(res.max_mixed_order_residual <= 1e-10);
    CHECK(res.max_dual_residual <= 1e-10);
    CHECK(res.min_gencs_slack >= -1e-12);
}

TEST_CASE("identity suite with zero trials passes vacuously") {
    const auto res = run_identity_suite(1, 0);
    CHECK(res.pass);
    CHECK(res.trials == 0);
}

TEST_CASE("sign-flipped symmetrize mutant trips the suite") {
    RngStream rng(55, "mutant", 0);
    const auto f1 = random_symmetric_tensor(rng, 2, 3, 4);
    const auto f2 = random_symmetric_tensor(rng, 2, 3, 4);
    const auto f3 = random_symmetric_tensor(rng, 2, 3, 4);
    const auto f4 = random_symmetric_tensor(rng, 2, 3, 4);
    REQUIRE(four_tensor_residual(f1, f2, f3, f4) <= 1e-10);

    // A flipped left side against an honest right side cannot cancel.
    CHECK(four_tensor_residual(f1, f2, f3, f4, alternating_sign_mutant()) > 1e-6);

    const auto res = run_identity_suite(2024, 50, 1e-10, alternating_sign_mutant());
    CHECK_FALSE(res.pass);
}
