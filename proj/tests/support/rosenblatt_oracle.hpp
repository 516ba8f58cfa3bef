#pragma once

// Independent oracle for the normalized Rosenblatt cumulants via the limiting
// cyclic Riesz integrals J_m = int_{[0,1]^m} prod |u_i - u_{i+1}|^{-D} du
// (indices cyclic, D = 1 - H):
//   kappa_m = 2^{m-1} (m-1)! J_m / (2 J_2)^{m/2}.
// J_2 and J_3 reduce to closed forms; J_4 is a smooth two-dimensional
// quadrature of the bounded chain kernel K2(a,b) = int |a-w|^{-D} |w-b|^{-D} dw.
// This path never touches the kernel-matrix implementation it checks.

#include <cmath>
#include <stdexcept>

namespace chaoskit::testing {

inline double beta_fn(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double riesz_j2(double D) { return 1.0 / ((1.0 - D) * (1.0 - 2.0 * D)); }

// 6 int_{s,t>0, s+t<1} s^-D t^-D (s+t)^-D (1-s-t) ds dt collapses to a product
// of one-dimensional integrals after (s,t) -> (rho sigma, rho (1-sigma)).
inline double riesz_j3(double D) {
    return 6.0 * beta_fn(1.0 - D, 1.0 - D) / ((2.0 - 3.0 * D) * (3.0 - 3.0 * D));
}

// chain kernel by graded midpoint quadrature around both singular points
inline double riesz_chain_k2(double a, double b, double D, int pts = 64) {
    if (a > b) std::swap(a, b);
    double total = 0.0;
    const double gamma = 3.0;
    // over each smooth piece, grade toward the singular endpoint(s)
    auto piece = [&](double lo, double hi, double sing) {
        if (hi - lo < 1e-300) return;
        // map t in (0,1) -> w graded toward `sing` end
        for (int k = 0; k < pts; ++k) {
            const double t0 = static_cast<double>(k) / pts;
            const double t1 = static_cast<double>(k + 1) / pts;
            const double g0 = std::pow(t0, gamma), g1 = std::pow(t1, gamma);
            const double tm = 0.5 * (t0 + t1);
            const double gm = std::pow(tm, gamma);
            const double w = sing == lo ? lo + (hi - lo) * gm : hi - (hi - lo) * gm;
            const double dw = (hi - lo) * std::abs(g1 - g0);
            total += std::pow(std::abs(a - w), -D) * std::pow(std::abs(w - b), -D) * dw;
        }
    };
    // [0, a]: singular at a; [a, b]: split at midpoint, singular both ends;
    // [b, 1]: singular at b
    piece(0.0, a, a);
    const double mid = 0.5 * (a + b);
    piece(a, mid, a);
    piece(mid, b, b);
    piece(b, 1.0, b);
    return total;
}

inline double riesz_j4(double D, int grid = 160) {
    const double h = 1.0 / grid;
    double total = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = i; j < grid; ++j) {
            const double a = (i + 0.5) * h;
            const double b = (j + 0.5) * h;
            const double k2 = riesz_chain_k2(a, b, D);
            total += (i == j ? 1.0 : 2.0) * k2 * k2 * h * h;
        }
    }
    return total;
}

struct RosenblattOracle {
    double kappa3;
    double kappa4;
};

inline RosenblattOracle rosenblatt_oracle(double H) {
    if (!(H > 0.5 && H < 1.0)) throw std::invalid_argument("rosenblatt_oracle: bad H");
    const double D = 1.0 - H;
    const double j2 = riesz_j2(D);
    const double j3 = riesz_j3(D);
    const double j4 = riesz_j4(D);
    RosenblattOracle out;
    out.kappa3 = 8.0 * j3 / std::pow(2.0 * j2, 1.5);
    out.kappa4 = 48.0 * j4 / ((2.0 * j2) * (2.0 * j2));
    return out;
}

}  // namespace chaoskit::testing
