#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "chaoskit/contraction.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Closed-form covariance of squares of two chaos variables F = I_{qi}(f),
// G = I_{qj}(g):
//   Cov(F^2, G^2) = qi! qj! sum_{r=1}^{qi^qj} C(qi,r) C(qj,r) |f (x)_r g|^2
//     + sum_{r=1}^{qi^qj} r!^2 C(qi,r)^2 C(qj,r)^2 (qi+qj-2r)! |f ~(x)_r g|^2.
// Always >= 0: squares of chaos variables are non-negatively correlated.
inline double cov_squares(int qi, const SymmetricTensor& f, int qj,
                          const SymmetricTensor& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("cov_squares: dimension mismatch");
    if (qi < 1 || qj < 1) throw std::invalid_argument("cov_squares: orders must be >= 1");
    if (f.order() != qi || g.order() != qj)
        throw std::invalid_argument("cov_squares: order mismatch");
    double total = 0.0;
    for (int r = 1; r <= std::min(qi, qj); ++r) {
        const BipartiteTensor c = contract(f, g, r);
        const double plain = c.norm_sq();
        const double sym = symmetrize(c).norm_sq();
        total += factorial(qi) * factorial(qj) * binomial(qi, r) * binomial(qj, r) * plain;
        const double rf = factorial(r) * binomial(qi, r) * binomial(qj, r);
        total += rf * rf * factorial(qi + qj - 2 * r) * sym;
    }
    return total;
}

// max_r |f (x)_r g|^2: a lower bound for cov_squares, and the quantity whose
// vanishing characterizes asymptotic moment-independence.
inline double cov_squares_lower_bound(int qi, const SymmetricTensor& f, int qj,
                                      const SymmetricTensor& g) {
    if (f.dim() != g.dim())
        throw std::invalid_argument("cov_squares_lower_bound: dimension mismatch");
    if (qi < 1 || qj < 1)
        throw std::invalid_argument("cov_squares_lower_bound: orders must be >= 1");
    double best = 0.0;
    for (int r = 1; r <= std::min(qi, qj); ++r)
        best = std::max(best, contract(f, g, r).norm_sq());
    return best;
}

// |f (x)_1 g|^2. Zero exactly iff I_p(f) and I_q(g) are independent.
inline double ustunel_zakai_gap(int p, const SymmetricTensor& f, int q,
                                const SymmetricTensor& g) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("ustunel_zakai_gap: orders must be >= 1");
    if (f.order() != p || g.order() != q)
        throw std::invalid_argument("ustunel_zakai_gap: order mismatch");
    return contract(f, g, 1).norm_sq();
}

// Fourth cumulant of I_q(f):
//   kappa_4 = sum_{r=1}^{q-1} [ q!^2 C(q,r)^2 |f (x)_r f|^2
//                               + r!^2 C(q,r)^4 (2q-2r)! |f ~(x)_r f|^2 ].
// Non-negative; zero iff every contraction r = 1..q-1 vanishes.
inline double fourth_cumulant(int q, const SymmetricTensor& f) {
    if (q < 1) throw std::invalid_argument("fourth_cumulant: order must be >= 1");
    if (f.order() != q) throw std::invalid_argument("fourth_cumulant: order mismatch");
    double total = 0.0;
    for (int r = 1; r <= q - 1; ++r) {
        const BipartiteTensor c = contract(f, f, r);
        const double qf = factorial(q) * binomial(q, r);
        total += qf * qf * c.norm_sq();
        const double rf = factorial(r) * binomial(q, r) * binomial(q, r);
        total += rf * rf * factorial(2 * q - 2 * r) * symmetrize(c).norm_sq();
    }
    return total;
}

// Criteria for convergence of I_q(f_n) (q even) to the centered chi-square
// G(nu): the middle contraction must approach c_q * f with
// c_q = 4 [(q/2)!]^3 [q!]^{-2}, and every other contraction must vanish.
struct Chi2Criteria {
    double c_q;
    double mid_gap;                          // |f ~(x)_{q/2} f - c_q f|
    std::map<int, double> other_contractions;  // r -> |f (x)_r f|, r != q/2
};

inline double chi2_cq(int q) {
    if (q < 2 || q % 2 != 0) throw std::invalid_argument("chi2_cq: q must be even, >= 2");
    const double h = factorial(q / 2);
    return 4.0 * h * h * h / (factorial(q) * factorial(q));
}

inline Chi2Criteria chi2_criteria(int q, const SymmetricTensor& f, double nu) {
    if (q % 2 != 0 || q < 2)
        throw std::invalid_argument("chi2_criteria: q must be even and >= 2");
    if (nu <= 0.0) throw std::invalid_argument("chi2_criteria: nu must be positive");
    if (f.order() != q) throw std::invalid_argument("chi2_criteria: order mismatch");
    Chi2Criteria out;
    out.c_q = chi2_cq(q);
    const SymmetricTensor mid = symmetrize_contract(f, f, q / 2);
    out.mid_gap = add(mid, scale(f, -out.c_q)).norm();
    for (int r = 1; r <= q - 1; ++r) {
        if (r == q / 2) continue;
        out.other_contractions[r] = contract(f, f, r).norm();
    }
    return out;
}

// Target moments of G(nu): E[G^2] = 2 nu and E[G^4] - 12 E[G^3] = 12 nu^2 - 48 nu.
struct Chi2Targets {
    double second_moment;
    double fourth_minus_12_third;
};

inline Chi2Targets chi2_target_moments(double nu) {
    if (nu <= 0.0) throw std::invalid_argument("chi2_target_moments: nu must be positive");
    return {2.0 * nu, 12.0 * nu * nu - 48.0 * nu};
}

}  // namespace chaoskit
