#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoskit/gaussian_path.hpp"  // NumericalError

namespace chaoskit {

// Cumulants of the normalized Rosenblatt value R_H(1) from its double-integral
// kernel f_H(1,x,y) = int_0^1 (s-x)_+^{H/2-1} (s-y)_+^{H/2-1} ds on the
// truncated domain x,y in [-T, 1].
//
// The kernel is a Gram kernel: f_H = K K* for K with kernel (s-x)_+^{H/2-1},
// so the operator traces that determine the cumulants,
//   kappa_m = 2^{m-1} (m-1)! c_H^m tr(A^m),
// can equally be taken in s-space over (0,1), where the x-integral of the
// Gram has a closed form:
//   int_{-T}^{s^t} (s-x)^{H/2-1} (t-x)^{H/2-1} dx
//     = Beta(H/2, 1-H) |s-t|^{H-1} - eps_T,   eps_T ~ T^{H-1}/(1-H).
// The s-grid is midpoint (never endpoint): cells of width h = 1/S with the
// singular diagonal excluded from the lattice sums and restored analytically.
// The lattice-vs-integral gap of a |u|^{-gamma} band has the exact first-order
// coefficient -2 zeta(gamma) h^{1-gamma} per unit diagonal length, giving
//   tr2 += -2 beta^2 zeta(2-2H) h^{2H-1}
//   tr3 += 3 g1 tr2,   tr4 += 4 g1 tr3,   g1 = -2 beta zeta(1-H) h^H
// (one correction per colliding adjacent pair of the trace cycle).
//
// c_H is fixed numerically so that kappa_2 = 2 c_H^2 tr(A^2) = 1; T is chosen
// so the kappa_2 mass discarded by the truncation stays below 1e-3.

struct RosenblattLevel {
    int s_cells;
    double c_H;
    double kappa3;
    double kappa4;
};

struct RosenblattCumulants {
    double H;
    double truncation;     // domain cutoff T
    double c_H;
    double kappa2 = 1.0;   // calibrated
    double kappa3;
    double kappa4;
    double kappa3_grid_tol;
    double kappa4_grid_tol;
    std::vector<RosenblattLevel> levels;
};

namespace detail {

inline double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

struct RosenblattTraces {
    double tr2, tr3, tr4;
};

inline RosenblattTraces rosenblatt_traces(double H, int s_cells, double truncation) {
    const double beta = beta_function(0.5 * H, 1.0 - H);
    const double eps_t = std::pow(truncation, H - 1.0) / (1.0 - H);
    const double h = 1.0 / static_cast<double>(s_cells);
    const int S = s_cells;

    std::vector<double> a(static_cast<std::size_t>(S) * S, 0.0);
    for (int i = 0; i < S; ++i) {
        for (int j = i + 1; j < S; ++j) {
            const double u = static_cast<double>(j - i) * h;
            const double v = (beta * std::pow(u, H - 1.0) - eps_t) * h;
            a[static_cast<std::size_t>(i) * S + j] = v;
            a[static_cast<std::size_t>(j) * S + i] = v;
        }
    }

    RosenblattTraces t{0.0, 0.0, 0.0};
    for (double v : a) t.tr2 += v * v;

    std::vector<double> p(static_cast<std::size_t>(S) * S, 0.0);
    for (int i = 0; i < S; ++i) {
        for (int k = 0; k < S; ++k) {
            const double v = a[static_cast<std::size_t>(i) * S + k];
            if (v == 0.0) continue;
            const double* arow = &a[static_cast<std::size_t>(k) * S];
            double* prow = &p[static_cast<std::size_t>(i) * S];
            for (int j = 0; j < S; ++j) prow[j] += v * arow[j];
        }
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
        t.tr3 += p[k] * a[k];
        t.tr4 += p[k] * p[k];
    }

    t.tr2 += -2.0 * beta * beta * std::riemann_zeta(2.0 - 2.0 * H) *
             std::pow(h, 2.0 * H - 1.0);
    const double g1 = -2.0 * beta * std::riemann_zeta(1.0 - H) * std::pow(h, H);
    t.tr3 += 3.0 * g1 * t.tr2;
    t.tr4 += 4.0 * g1 * t.tr3;
    return t;
}

// Smallest T whose truncation removes at most eps of the kappa_2 mass:
// relative deficit ~ 2 eps_T <|u|^{H-1}> / (beta J2') with
// <|u|^{H-1}> = 2/(H(H+1)) and J2' = 1/(H(2H-1)).
inline double rosenblatt_truncation(double H, double eps) {
    const double beta = beta_function(0.5 * H, 1.0 - H);
    const double mean_riesz = 2.0 / (H * (H + 1.0));
    const double j2 = 1.0 / (H * (2.0 * H - 1.0));
    const double coef = 2.0 * mean_riesz / ((1.0 - H) * beta * j2);
    return std::max(1e4, std::pow(eps / coef, 1.0 / (H - 1.0)));
}

}  // namespace detail

inline RosenblattCumulants rosenblatt_cumulants(double H, int resolution = 512,
                                                double kappa2_shift_tol = 0.01) {
    if (!(H > 0.5 && H < 1.0))
        throw std::invalid_argument("rosenblatt_cumulants: need 1/2 < H < 1");
    if (resolution < 32)
        throw std::invalid_argument("rosenblatt_cumulants: resolution too small");

    RosenblattCumulants out;
    out.H = H;
    out.truncation = detail::rosenblatt_truncation(H, 1e-3);
    for (int s_cells : {resolution / 4, resolution / 2, resolution}) {
        const auto tr = detail::rosenblatt_traces(H, s_cells, out.truncation);
        RosenblattLevel lvl;
        lvl.s_cells = s_cells;
        const double c = 1.0 / std::sqrt(2.0 * tr.tr2);
        lvl.c_H = c;
        lvl.kappa3 = 8.0 * c * c * c * tr.tr3;
        lvl.kappa4 = 48.0 * c * c * c * c * tr.tr4;
        out.levels.push_back(lvl);
    }

    const auto& fine = out.levels.back();
    const auto& half = out.levels[out.levels.size() - 2];
    const double shift = std::abs(fine.c_H - half.c_H) / fine.c_H;
    if (shift > kappa2_shift_tol)
        throw NumericalError(
            "rosenblatt_cumulants: grid too coarse, kappa_2 normalization shifted by " +
            std::to_string(100.0 * shift) + "% between the two finest grids");

    out.c_H = fine.c_H;
    out.kappa3 = fine.kappa3;
    out.kappa4 = fine.kappa4;

    // conservative grid tolerance: three times the last refinement step
    out.kappa3_grid_tol =
        3.0 * std::max(std::abs(fine.kappa3 - half.kappa3), 1e-4 * std::abs(fine.kappa3));
    out.kappa4_grid_tol =
        3.0 * std::max(std::abs(fine.kappa4 - half.kappa4), 1e-4 * std::abs(fine.kappa4));
    return out;
}

}  // namespace chaoskit
