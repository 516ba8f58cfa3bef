#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaoskit/covariance_model.hpp"
#include "chaoskit/gaussian_path.hpp"
#include "chaoskit/hermite_sums.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/sampler.hpp"
#include "chaoskit/stats.hpp"

namespace chaoskit {

// Replicated partial-sum statistics. Replicates 2t and 2t+1 come from the two
// independent paths of FFT draw t, whose stream is (seed, name, t): the output
// is a pure function of (seed, n, replicates) regardless of worker count.
// Every S_{q,n}(1) is normalized by the exact finite-n standard deviation, so
// each column has unit variance at every n (not only asymptotically).
struct PartialSumSamples {
    std::size_t n;
    std::vector<int> orders;
    std::vector<std::vector<double>> columns;  // columns[k][replicate]
};

inline PartialSumSamples sample_partial_sums(const CovarianceModel& model, std::size_t n,
                                             const std::vector<int>& orders,
                                             int replicates, std::uint64_t seed,
                                             std::string_view stream_name = "partial-sums",
                                             int workers = 1) {
    if (replicates < 2)
        throw std::invalid_argument("sample_partial_sums: need >= 2 replicates");
    PartialSumSamples out;
    out.n = n;
    out.orders = orders;
    out.columns.assign(orders.size(), std::vector<double>(replicates));

    std::vector<double> sd(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k)
        sd[k] = std::sqrt(finite_n_variance(model, orders[k], n));

    const PathSampler sampler(model, n);
    const std::uint64_t name_hash = fnv1a64(stream_name);
    const int qmax = *std::max_element(orders.begin(), orders.end());

    const std::size_t draws = (static_cast<std::size_t>(replicates) + 1) / 2;
    parallel_for(draws, workers, [&](std::size_t t) {
        RngStream rng(seed, name_hash, t);
        const auto [a, b] = sampler.sample_pair(rng);
        std::vector<double> herm;
        for (int half = 0; half < 2; ++half) {
            const std::size_t rep = 2 * t + half;
            if (rep >= static_cast<std::size_t>(replicates)) break;
            const auto& path = half == 0 ? a : b;
            std::vector<double> sums(orders.size(), 0.0);
            for (double x : path) {
                hermite_values(qmax, x, herm);
                for (std::size_t k = 0; k < orders.size(); ++k) sums[k] += herm[orders[k]];
            }
            for (std::size_t k = 0; k < orders.size(); ++k)
                out.columns[k][rep] = sums[k] / sd[k];
        }
    });
    return out;
}

// The two renormalization regimes for the pair (S_{q,n}, S_{2,n}) with q >= 3
// over a regularly varying covariance r(k) = k^{-D} L(k):
//   case 1 (D > 1/2):        both coordinates become independent Gaussians;
//   case 2 (1/q < D < 1/2):  the first becomes Gaussian, the second converges
//                            to the (unit-variance) Rosenblatt value, and the
//                            two are asymptotically independent.
// D in (0, 1/q] is refused (out of scope), as is the boundary D = 1/2.
struct JointLimitReport {
    int case_id;  // 1 or 2
    int q;
    std::size_t n;
    int replicates;
    double ks_first;                      // KS of S_q coordinate vs N(0,1)
    double ks_second;                     // case 1: KS of S_2 coordinate
    JackknifeStat::Result kappa3_second;  // case 2 marginal diagnostics
    JackknifeStat::Result kappa4_second;
    MeanSe cross_cov;         // E[X Y]; exactly 0 in expectation (orders differ)
    double cov_squares;       // empirical Cov(X^2, Y^2)
    double cov_squares_se;    // jackknife SE
};

namespace detail {

// Cov(X^2, Y^2) with a leave-one-out jackknife SE.
inline std::pair<double, double> empirical_cov_squares(const std::vector<double>& x,
                                                       const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> u(n), v(n), w(n);
    for (std::size_t t = 0; t < n; ++t) {
        u[t] = x[t] * x[t];
        v[t] = y[t] * y[t];
        w[t] = u[t] * v[t];
    }
    const double su = pairwise_sum(u), sv = pairwise_sum(v), sw = pairwise_sum(w);
    const double nn = static_cast<double>(n);
    const double full = sw / nn - (su / nn) * (sv / nn);
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double m = nn - 1.0;
        loo[t] = (sw - w[t]) / m - ((su - u[t]) / m) * ((sv - v[t]) / m);
        loo_mean += loo[t];
    }
    loo_mean /= nn;
    double ss = 0.0;
    for (double l : loo) ss += (l - loo_mean) * (l - loo_mean);
    return {full, std::sqrt(ss * (nn - 1.0) / nn)};
}

}  // namespace detail

inline JointLimitReport joint_experiment(const CovarianceModel& model, int q,
                                         std::size_t n, int replicates,
                                         std::uint64_t seed, int workers = 1) {
    if (q < 3) throw std::invalid_argument("joint_experiment: need q >= 3");
    int case_id = 1;
    if (model.kind() == CovarianceModel::Kind::RegVar) {
        const double D = model.exponent();
        if (D <= 1.0 / q)
            throw std::invalid_argument(
                "joint_experiment: D <= 1/q is out of scope for this pair");
        if (D == 0.5)
            throw std::invalid_argument("joint_experiment: boundary D = 1/2 unsupported");
        case_id = D > 0.5 ? 1 : 2;
    }

    const auto samples =
        sample_partial_sums(model, n, {q, 2}, replicates, seed, "joint", workers);
    const auto& x = samples.columns[0];
    const auto& y = samples.columns[1];

    JointLimitReport rep;
    rep.case_id = case_id;
    rep.q = q;
    rep.n = n;
    rep.replicates = replicates;
    rep.ks_first = ks_distance(x);
    rep.ks_second = case_id == 1 ? ks_distance(y) : 0.0;
    if (case_id == 2) {
        rep.kappa3_second = sample_kappa3(y);
        rep.kappa4_second = sample_kappa4(y);
    } else {
        rep.kappa3_second = {0.0, 0.0};
        rep.kappa4_second = {0.0, 0.0};
    }
    std::vector<double> xy(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) xy[t] = x[t] * y[t];
    rep.cross_cov = mean_se(xy);
    const auto cs = detail::empirical_cov_squares(x, y);
    rep.cov_squares = cs.first;
    rep.cov_squares_se = cs.second;
    return rep;
}

}  // namespace chaoskit
