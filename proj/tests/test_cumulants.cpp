#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chaoskit/cumulants.hpp"
#include "chaoskit/rng.hpp"

using namespace chaoskit;
using Catch::Matchers::WithinAbs;

namespace {

double normal_moment(int k) {  // E N^k for N ~ N(0,1)
    if (k % 2 == 1) return 0.0;
    double m = 1.0;
    for (int j = k - 1; j > 1; j -= 2) m *= j;
    return m;
}

}  // namespace

TEST_CASE("set partition counts follow the Bell numbers") {
    const int bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (int m = 1; m <= 8; ++m) {
        int count = 0;
        for_each_set_partition(m, [&](const auto&) { ++count; });
        CHECK(count == bell[m]);
    }
}

TEST_CASE("pair cumulant is the covariance") {
    MomentTable moments;
    moments[{1}] = 0.3;
    moments[{2}] = -0.2;
    moments[{1, 2}] = 0.5;
    CHECK_THAT(joint_cumulant(moments, {1, 2}), WithinAbs(0.5 - 0.3 * -0.2, 1e-15));
}

TEST_CASE("fourth cumulant of a centered variable") {
    // kappa_4 = E X^4 - 3 (E X^2)^2 when E X = E X^3 = 0
    MomentTable moments;
    moments[{1}] = 0.0;
    moments[{1, 1}] = 1.7;
    moments[{1, 1, 1}] = 0.0;
    moments[{1, 1, 1, 1}] = 9.4;
    CHECK_THAT(joint_cumulant(moments, {1, 1, 1, 1}),
               WithinAbs(9.4 - 3.0 * 1.7 * 1.7, 1e-12));
}

TEST_CASE("mixed cumulants across independent normals vanish") {
    // moment table of two independent standard normals: E[X^a Y^b] factorizes
    MomentTable moments;
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; a + b <= 6; ++b) {
            if (a + b == 0) continue;
            IndexMultiset key;
            key.insert(key.end(), a, 1);
            key.insert(key.end(), b, 2);
            moments[key] = normal_moment(a) * normal_moment(b);
        }
    }
    for (int a = 1; a <= 5; ++a) {
        for (int b = 1; a + b <= 6; ++b) {
            IndexMultiset key;
            key.insert(key.end(), a, 1);
            key.insert(key.end(), b, 2);
            CHECK_THAT(joint_cumulant(moments, key), WithinAbs(0.0, 1e-10));
        }
    }
    // sanity: the pure cumulants recover the normal ones
    CHECK_THAT(joint_cumulant(moments, {1, 1}), WithinAbs(1.0, 1e-12));
    CHECK_THAT(joint_cumulant(moments, {2, 2, 2, 2}), WithinAbs(0.0, 1e-12));
}

TEST_CASE("moments -> cumulants -> moments is the identity") {
    RngStream rng(77, "cumulant-roundtrip", 0);
    for (int trial = 0; trial < 20; ++trial) {
        // random full moment table on {1,2} up to total order 6
        MomentTable moments;
        for (int a = 0; a <= 6; ++a) {
            for (int b = 0; a + b <= 6; ++b) {
                if (a + b == 0) continue;
                IndexMultiset key;
                key.insert(key.end(), a, 1);
                key.insert(key.end(), b, 2);
                moments[key] = 2.0 * rng.uniform01() - 1.0;
            }
        }
        const auto cumulants = moments_to_cumulants(moments);
        const auto back = cumulants_to_moments(cumulants);
        for (const auto& [key, v] : moments)
            CHECK_THAT(back.at(key), WithinAbs(v, 1e-10));
    }
}

TEST_CASE("cumulant table errors") {
    MomentTable incomplete;
    incomplete[{1, 1}] = 1.0;  // missing the order-1 entry
    CHECK_THROWS_AS(joint_cumulant(incomplete, {1, 1}), std::invalid_argument);

    MomentTable moments;
    IndexMultiset big(kMaxCumulantOrder + 1, 1);
    moments[big] = 1.0;
    CHECK_THROWS_AS(joint_cumulant(moments, big), std::invalid_argument);
}
