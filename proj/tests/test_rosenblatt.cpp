#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chaoskit/covariance_model.hpp"
#include "chaoskit/hermite_sums.hpp"
#include "chaoskit/limit_experiments.hpp"
#include "chaoskit/rosenblatt.hpp"
#include "support/rosenblatt_oracle.hpp"

using namespace chaoskit;
using Catch::Matchers::WithinAbs;

TEST_CASE("rosenblatt_cumulants basics") {
    const auto r = rosenblatt_cumulants(0.7, 256);
    CHECK(r.kappa2 == 1.0);  // calibrated by construction
    CHECK(r.kappa3 > 0.0);
    CHECK(r.kappa4 > 0.0);
    CHECK(r.levels.size() == 3);
    CHECK(r.c_H > 0.0);
    CHECK(r.truncation > 1e3);

    // refinement shifts shrink along the ladder
    const double d1 = std::abs(r.levels[1].kappa3 - r.levels[0].kappa3);
    const double d2 = std::abs(r.levels[2].kappa3 - r.levels[1].kappa3);
    CHECK(d2 <= d1 + 1e-12);

    CHECK_THROWS_AS(rosenblatt_cumulants(0.4), std::invalid_argument);
    CHECK_THROWS_AS(rosenblatt_cumulants(1.0), std::invalid_argument);
    CHECK_THROWS_AS(rosenblatt_cumulants(0.7, 8), std::invalid_argument);
}

TEST_CASE("grid-too-coarse detection") {
    // An unreasonably tight shift tolerance must trip the convergence gate.
    CHECK_THROWS_AS(rosenblatt_cumulants(0.55, 64, 1e-9), NumericalError);
}

TEST_CASE("kernel quadrature against the cyclic Riesz oracle") {
    for (double H : {0.6, 0.7, 0.8}) {
        const auto quad = rosenblatt_cumulants(H, 512);
        const auto oracle = chaoskit::testing::rosenblatt_oracle(H);
        INFO("H = " << H << " quad k3 = " << quad.kappa3 << " oracle k3 = " << oracle.kappa3);
        CHECK(std::abs(quad.kappa3 - oracle.kappa3) <=
              quad.kappa3_grid_tol + 0.01 * std::abs(oracle.kappa3));
        INFO("H = " << H << " quad k4 = " << quad.kappa4 << " oracle k4 = " << oracle.kappa4);
        CHECK(std::abs(quad.kappa4 - oracle.kappa4) <=
              quad.kappa4_grid_tol + 0.02 * std::abs(oracle.kappa4));
    }
}

TEST_CASE("empirical partial-sum cumulants approach the kernel values") {
    // Normalized S_{2,n} replicates at a modest size against the quadrature
    // kappa_3; the tolerance combines the MC SE and the grid tolerance plus a
    // finite-n allowance at this small n.
    const double D = 0.3;
    const auto model = CovarianceModel::long_range(D);
    const auto quad = rosenblatt_cumulants(1.0 - D, 256);
    const auto samples = sample_partial_sums(model, 2048, {2}, 300, 77, "taqqu-test", 4);
    const auto k3 = sample_kappa3(samples.columns[0]);
    CHECK(std::abs(k3.value - quad.kappa3) <=
          4.0 * k3.se + quad.kappa3_grid_tol + 0.15 * quad.kappa3);
    const auto k4 = sample_kappa4(samples.columns[0]);
    CHECK(k4.value > 0.0);
}
