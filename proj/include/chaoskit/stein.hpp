#pragma once

#include <cmath>
#include <stdexcept>

#include "chaoskit/chaos_vector.hpp"
#include "chaoskit/independence.hpp"

namespace chaoskit {

// E|N|^4 for N ~ N_d(0, Sigma): sum_{i,j} (sigma_ii sigma_jj + 2 sigma_ij^2).
inline double gaussian_fourth_norm(const CovarianceMatrix& sigma) {
    const int d = sigma.size();
    double total = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            total += sigma(i, i) * sigma(j, j) + 2.0 * sigma(i, j) * sigma(i, j);
    return total;
}

// E|F|^4 for a chaos vector: sum_{i,j} E[F_i^2 F_j^2] with
// E[F_i^2 F_j^2] = Cov(F_i^2, F_j^2) + E[F_i^2] E[F_j^2].
inline double chaos_fourth_norm(const ChaosVectorSpec& v) {
    const int d = static_cast<int>(v.size());
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        const auto& [qi, fi] = v.components[i];
        const double mi = second_moment(qi, fi);
        for (int j = 0; j < d; ++j) {
            const auto& [qj, fj] = v.components[j];
            const double mj = second_moment(qj, fj);
            total += cov_squares(qi, fi, qj, fj) + mi * mj;
        }
    }
    return total;
}

// E|F|^4 - E|N|^4, the quantity under the square root of both bounds. Small
// negative values (roundoff near the exactly-Gaussian case) are clamped to 0;
// anything below -1e-10 signals a Sigma inconsistent with the vector spec.
inline double fourth_norm_radicand(const ChaosVectorSpec& v, const CovarianceMatrix& sigma) {
    if (static_cast<int>(v.size()) != sigma.size())
        throw std::invalid_argument("fourth_norm_radicand: size mismatch");
    const double radicand = chaos_fourth_norm(v) - gaussian_fourth_norm(sigma);
    if (radicand < 0.0) {
        if (radicand < -1e-10)
            throw std::runtime_error(
                "fourth_norm_radicand: negative beyond tolerance (Sigma inconsistent "
                "with the vector spec)");
        return 0.0;
    }
    return radicand;
}

// |E h(F) - E h(N)| <= sqrt(d) |Sigma|_op^{1/2} |Sigma^{-1}|_op |h|_Lip
//                      * sqrt(E|F|^4 - E|N|^4)   for Lipschitz h.
inline double stein_bound_lipschitz(const ChaosVectorSpec& v, const CovarianceMatrix& sigma,
                                    double h_lip) {
    const int d = sigma.size();
    if (!is_psd(sigma))
        throw std::invalid_argument("stein_bound_lipschitz: Sigma not PSD");
    const auto ev = symmetric_eigenvalues(sigma);
    const double lam_max = std::abs(ev.back());
    const double lam_min = ev.front();
    if (lam_min <= 1e-12 * std::max(1.0, lam_max))
        throw std::invalid_argument("stein_bound_lipschitz: Sigma singular");
    const double radicand = fourth_norm_radicand(v, sigma);
    return std::sqrt(static_cast<double>(d)) * std::sqrt(lam_max) * (1.0 / lam_min) *
           h_lip * std::sqrt(radicand);
}

// |E h(F) - E h(N)| <= (1/2) |h''|_inf sqrt(E|F|^4 - E|N|^4)  for C^2 h.
inline double stein_bound_c2(const ChaosVectorSpec& v, const CovarianceMatrix& sigma,
                             double h_second_sup) {
    const double radicand = fourth_norm_radicand(v, sigma);
    return 0.5 * h_second_sup * std::sqrt(radicand);
}

}  // namespace chaoskit
