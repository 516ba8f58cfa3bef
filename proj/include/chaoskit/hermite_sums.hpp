#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chaoskit/covariance_model.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/multi_index.hpp"

namespace chaoskit {

// Partial sums S_{q,n}(t) = sum_{k <= floor(n t)} H_q(G_k) of a Hermite-
// subordinated stationary sequence, evaluated on a fixed time grid.
struct HermitePartialSum {
    int q;
    std::vector<double> grid;    // t values
    std::vector<double> values;  // S_{q,n}(t), piecewise constant in floor(n t)
};

inline const std::vector<double>& default_time_grid() {
    static const std::vector<double> grid = {0.25, 0.5, 0.75, 1.0};
    return grid;
}

inline HermitePartialSum hermite_partial_sum(const std::vector<double>& path, int q,
                                             const std::vector<double>& grid =
                                                 default_time_grid()) {
    if (q < 1) throw std::invalid_argument("hermite_partial_sum: q must be >= 1");
    HermitePartialSum out;
    out.q = q;
    out.grid = grid;
    out.values.resize(grid.size());
    const std::size_t n = path.size();
    std::vector<std::size_t> cut(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] < 0.0) throw std::invalid_argument("hermite_partial_sum: t < 0");
        cut[g] = std::min(n, static_cast<std::size_t>(std::floor(
                                 static_cast<double>(n) * grid[g])));
        if (g > 0 && cut[g] < cut[g - 1])
            throw std::invalid_argument("hermite_partial_sum: grid must be increasing");
    }
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (; k < cut[g]; ++k) acc += hermite_eval(q, path[k]);
        out.values[g] = acc;
    }
    return out;
}

// a_q = [q! sum_{k in Z} r(k)^q]^{1/2}. The series route truncates when the
// model's certified tail bound drops below `remainder`; models with a closed
// form can skip the series entirely.
inline double breuer_major_constant(const CovarianceModel& model, int q,
                                    bool use_closed_form = true,
                                    double remainder = 1e-10) {
    if (q < 1) throw std::invalid_argument("breuer_major_constant: q must be >= 1");
    if (use_closed_form && model.has_closed_form_sum())
        return std::sqrt(factorial(q) * model.sum_r_pow(q));

    if (!model.has_tail_bound())
        throw std::invalid_argument(
            "breuer_major_constant: summability not certified by the model");
    double sum = 1.0;  // k = 0 term, r(0) = 1
    std::int64_t k = 0;
    for (;;) {
        ++k;
        sum += 2.0 * std::pow(model.r(k), q);
        // the remainder target applies to a_q^2 = q! * sum
        const double tail = factorial(q) * model.tail_bound(k, q);
        if (tail <= remainder) break;
        if (k > (std::int64_t{1} << 26))
            throw std::invalid_argument(
                "breuer_major_constant: series truncation cannot certify the remainder");
    }
    return std::sqrt(factorial(q) * sum);
}

// Normalizer for the regularly-varying regime: n^{1-D} L(n) together with
// b_D = [(1-D)(1-2D)]^{-1/2}, defined for 0 < D < 1/2 (pole at D = 1/2).
struct TaqquNormalizer {
    double normalizer;
    double b_D;
};

inline TaqquNormalizer taqqu_normalizer(const CovarianceModel& model, std::size_t n) {
    if (model.kind() != CovarianceModel::Kind::RegVar)
        throw std::invalid_argument("taqqu_normalizer: regvar model required");
    const double D = model.exponent();
    if (!(D > 0.0 && D < 0.5))
        throw std::invalid_argument("taqqu_normalizer: need 0 < D < 1/2");
    TaqquNormalizer out;
    out.normalizer = std::pow(static_cast<double>(n), 1.0 - D) *
                     model.slowly_varying(static_cast<double>(n));
    out.b_D = 1.0 / std::sqrt((1.0 - D) * (1.0 - 2.0 * D));
    return out;
}

// Exact finite-n variance of S_{q,n}(1):
//   Var = q! sum_{|k| < n} (n - |k|) r(k)^q,
// from E[H_q(G_1) H_q(G_{1+k})] = q! r(k)^q. This is the deterministic oracle
// the Monte Carlo runs are checked against.
inline double finite_n_variance(const CovarianceModel& model, int q, std::size_t n) {
    if (q < 1) throw std::invalid_argument("finite_n_variance: q must be >= 1");
    if (n < 1) throw std::invalid_argument("finite_n_variance: n must be >= 1");
    double sum = static_cast<double>(n);  // k = 0
    for (std::size_t k = 1; k < n; ++k)
        sum += 2.0 * static_cast<double>(n - k) *
               std::pow(model.r(static_cast<std::int64_t>(k)), q);
    return factorial(q) * sum;
}

}  // namespace chaoskit
