#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/contraction.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/sampler.hpp"
#include "chaoskit/stats.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Discrete homogeneous chaos form Q(X) = sum over ordered distinct tuples of
// a(i_1..i_q) X_{i_1} ... X_{i_q}. Coefficients are symmetric by construction
// (sorted keys, function-value convention) and vanish on diagonals: keys with
// repeated entries are rejected. The unit-variance normalization
// q! sum a^2 = 1 is an optional flag, not an invariant.
class ChaosForm {
  public:
    ChaosForm(int order, int dim) : order_(order), dim_(dim) {
        if (order < 1) throw std::invalid_argument("ChaosForm: order must be >= 1");
        if (dim < 1) throw std::invalid_argument("ChaosForm: dim must be >= 1");
    }

    int order() const { return order_; }
    int dim() const { return dim_; }
    std::size_t nnz() const { return coeffs_.size(); }
    const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }

    void set(MultiIndex m, double v) {
        validate_key(m);
        std::sort(m.begin(), m.end());
        for (std::size_t i = 1; i < m.size(); ++i)
            if (m[i] == m[i - 1])
                throw std::invalid_argument("ChaosForm: keys must vanish on diagonals");
        if (v == 0.0)
            coeffs_.erase(m);
        else
            coeffs_[std::move(m)] = v;
    }

    double at(MultiIndex m) const {
        std::sort(m.begin(), m.end());
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    // q! sum over ordered tuples of a^2; every orbit has the full q! size
    double variance() const {
        double s = 0.0;
        for (const auto& [m, v] : coeffs_) s += v * v;
        const double q = factorial(order_);
        return q * q * s;
    }

    bool is_unit_variance(double tol = 1e-10) const {
        return std::abs(variance() - 1.0) <= tol;
    }

    SymmetricTensor as_symmetric_tensor() const {
        SymmetricTensor t(order_, dim_);
        for (const auto& [m, v] : coeffs_) t.set(m, v);
        return t;
    }

    static ChaosForm from_symmetric_tensor(const SymmetricTensor& t) {
        ChaosForm f(t.order(), t.dim());
        for (const auto& [m, v] : t.coeffs()) f.set(m, v);
        return f;
    }

  private:
    void validate_key(const MultiIndex& m) const {
        if (static_cast<int>(m.size()) != order_)
            throw std::invalid_argument("ChaosForm: key length != order");
        for (int i : m)
            if (i < 1 || i > dim_)
                throw std::invalid_argument("ChaosForm: index out of [1, dim]");
    }

    int order_;
    int dim_;
    std::map<MultiIndex, double> coeffs_;
};

// Innovation law: mean 0, variance 1, all needed moments finite. User laws
// supply a moment list (validated for availability, not realizability) and
// cannot be sampled.
class InnovationLaw {
  public:
    enum class Kind { Rademacher, Gaussian, User };

    static InnovationLaw rademacher() { return InnovationLaw(Kind::Rademacher, {}); }
    static InnovationLaw gaussian() { return InnovationLaw(Kind::Gaussian, {}); }
    // moments[k-1] = E X^k, k = 1..len; requires E X = 0, E X^2 = 1
    static InnovationLaw user(std::vector<double> moments) {
        if (moments.size() < 2 || moments[0] != 0.0 ||
            std::abs(moments[1] - 1.0) > 1e-12)
            throw std::invalid_argument(
                "InnovationLaw: user law needs mean 0 and variance 1");
        return InnovationLaw(Kind::User, std::move(moments));
    }

    Kind kind() const { return kind_; }
    bool sampleable() const { return kind_ != Kind::User; }

    double moment(int k) const {
        if (k < 0) throw std::invalid_argument("InnovationLaw: negative moment order");
        if (k == 0) return 1.0;
        switch (kind_) {
            case Kind::Rademacher:
                return k % 2 == 0 ? 1.0 : 0.0;
            case Kind::Gaussian: {
                if (k % 2 == 1) return 0.0;
                double m = 1.0;
                for (int j = k - 1; j > 1; j -= 2) m *= j;
                return m;
            }
            case Kind::User:
                if (k > static_cast<int>(moments_.size()))
                    throw std::invalid_argument(
                        "InnovationLaw: user law lacks moment of order " + std::to_string(k));
                return moments_[k - 1];
        }
        return 0.0;
    }

    // requires a moment table covering order q*(M+N)
    void require_moments(int order) const {
        if (kind_ == Kind::User && order > static_cast<int>(moments_.size()))
            throw std::invalid_argument(
                "InnovationLaw: user law must supply moments up to order " +
                std::to_string(order));
    }

    double sample(RngStream& rng) const {
        switch (kind_) {
            case Kind::Rademacher:
                return rng.rademacher();
            case Kind::Gaussian:
                return rng.normal();
            case Kind::User:
                throw std::invalid_argument("InnovationLaw: user laws cannot be sampled");
        }
        return 0.0;
    }

  private:
    InnovationLaw(Kind kind, std::vector<double> moments)
        : kind_(kind), moments_(std::move(moments)) {}
    Kind kind_;
    std::vector<double> moments_;
};

// Q(x) = q! sum over sorted keys of a * prod x (all entries distinct, so every
// orbit has exactly q! ordered tuples).
inline double evaluate_form(const ChaosForm& a, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) < a.dim())
        throw std::invalid_argument("evaluate_form: input shorter than dim");
    const double qf = factorial(a.order());
    double total = 0.0;
    for (const auto& [m, v] : a.coeffs()) {
        double prod = v;
        for (int i : m) prod *= x[i - 1];
        total += prod;
    }
    return qf * total;
}

// influence(i) = sum over ordered tails of a(i, i_2.., i_q)^2: each key
// containing i contributes (q-1)! tail orderings.
inline double influence(const ChaosForm& a, int i) {
    if (i < 1 || i > a.dim()) throw std::invalid_argument("influence: index out of range");
    const double tail_orbits = factorial(a.order() - 1);
    double s = 0.0;
    for (const auto& [m, v] : a.coeffs())
        if (std::binary_search(m.begin(), m.end(), i)) s += tail_orbits * v * v;
    return s;
}

inline double max_influence(const ChaosForm& a) {
    double best = 0.0;
    for (int i = 1; i <= a.dim(); ++i) best = std::max(best, influence(a, i));
    return best;
}

// sqrt of the squared-sum mixed-contraction statistic: exactly the norm of
// the order-r contraction of the two forms viewed as symmetric tensors.
inline double mixed_contraction_norm(const ChaosForm& a1, const ChaosForm& a2, int r) {
    if (a1.dim() != a2.dim())
        throw std::invalid_argument("mixed_contraction_norm: dimension mismatch");
    if (r < 1 || r > std::min(a1.order(), a2.order()))
        throw std::invalid_argument("mixed_contraction_norm: r out of range");
    return contract(a1.as_symmetric_tensor(), a2.as_symmetric_tensor(), r).norm();
}

// The dependent-but-uncorrelated pair: Q_1 = X_1 (X_2 + X_3)/2 and
// Q_2 = X_4 (X_2 - X_3)/2. All mixed contractions vanish while the influences
// stay at 1/8, and Q_1 Q_2 = 0 identically under Rademacher inputs.
inline std::pair<ChaosForm, ChaosForm> counterexample_pair() {
    ChaosForm a1(2, 4), a2(2, 4);
    a1.set({1, 2}, 0.25);
    a1.set({1, 3}, 0.25);
    a2.set({2, 4}, 0.25);
    a2.set({3, 4}, -0.25);
    return {a1, a2};
}

struct MomentGap {
    double gap;   // E[Q1^M Q2^N] - E[Q1^M] E[Q2^N]
    double se;    // 0 for exact enumeration
    bool exact;
};

inline constexpr int kEnumerationDimLimit = 24;

// Exact gap by enumeration over {-1,+1}^d (Rademacher only, d <= 24).
inline MomentGap moment_gap_enumerate(const ChaosForm& a1, const ChaosForm& a2, int M,
                                      int N, const InnovationLaw& law) {
    if (law.kind() != InnovationLaw::Kind::Rademacher)
        throw std::invalid_argument("moment_gap: enumeration requires the Rademacher law");
    const int d = std::max(a1.dim(), a2.dim());
    if (d > kEnumerationDimLimit)
        throw std::invalid_argument("moment_gap: enumeration limited to dim <= 24");
    if (a1.dim() != a2.dim())
        throw std::invalid_argument("moment_gap: dimension mismatch");

    const std::uint64_t total = std::uint64_t{1} << d;
    double s12 = 0.0, s1 = 0.0, s2 = 0.0;
    std::vector<double> x(d);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < d; ++i) x[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        const double q1 = evaluate_form(a1, x);
        const double q2 = evaluate_form(a2, x);
        const double p1 = std::pow(q1, M);
        const double p2 = std::pow(q2, N);
        s12 += p1 * p2;
        s1 += p1;
        s2 += p2;
    }
    const double inv = 1.0 / static_cast<double>(total);
    return {s12 * inv - (s1 * inv) * (s2 * inv), 0.0, true};
}

// Monte Carlo gap under any sampleable law.
inline MomentGap moment_gap_sample(const ChaosForm& a1, const ChaosForm& a2, int M, int N,
                                   const InnovationLaw& law, std::size_t n_samples,
                                   std::uint64_t seed, int workers = 1) {
    if (!law.sampleable())
        throw std::invalid_argument("moment_gap: law cannot be sampled");
    if (a1.dim() != a2.dim())
        throw std::invalid_argument("moment_gap: dimension mismatch");
    const int d = a1.dim();
    std::vector<double> p1(n_samples), p2(n_samples), p12(n_samples);
    parallel_for(n_samples, workers, [&](std::size_t t) {
        RngStream rng(seed, "moment-gap", t);
        std::vector<double> x(d);
        for (auto& v : x) v = law.sample(rng);
        const double q1 = std::pow(evaluate_form(a1, x), M);
        const double q2 = std::pow(evaluate_form(a2, x), N);
        p1[t] = q1;
        p2[t] = q2;
        p12[t] = q1 * q2;
    });
    const auto m1 = mean_se(p1);
    const auto m2 = mean_se(p2);
    const auto m12 = mean_se(p12);
    const double gap = m12.mean - m1.mean * m2.mean;
    // first-order error propagation across the three averaged terms
    const double se = std::sqrt(m12.se * m12.se + std::pow(m2.mean * m1.se, 2) +
                                std::pow(m1.mean * m2.se, 2));
    return {gap, se, false};
}

struct LindebergGap {
    double gap_x;
    double gap_g;
    double delta;     // gap_x - gap_g
    double se;        // combined MC standard error of delta
};

// The same mixed-moment gap under the given innovations and under Gaussian
// innovations, coupled through shared uniforms (x_i and g_i are comonotone
// transforms of one uniform draw), so the difference is estimated with much
// less noise than two independent runs.
inline LindebergGap lindeberg_gap(const ChaosForm& a1, const ChaosForm& a2, int M, int N,
                                  const InnovationLaw& law, std::size_t n_samples,
                                  std::uint64_t seed, int workers = 1) {
    if (!law.sampleable())
        throw std::invalid_argument("lindeberg_gap: law cannot be sampled");
    if (a1.dim() != a2.dim())
        throw std::invalid_argument("lindeberg_gap: dimension mismatch");
    law.require_moments(a1.order() * M + a2.order() * N);
    const int d = a1.dim();

    std::vector<double> x1(n_samples), x2(n_samples), x12(n_samples);
    std::vector<double> g1(n_samples), g2(n_samples), g12(n_samples);
    std::vector<double> d12(n_samples);
    parallel_for(n_samples, workers, [&](std::size_t t) {
        RngStream rng(seed, "lindeberg", t);
        std::vector<double> x(d), g(d);
        for (int i = 0; i < d; ++i) {
            const double u = rng.uniform01();
            x[i] = u < 0.5 ? -1.0 : 1.0;
            g[i] = normal_ppf(u);
        }
        if (law.kind() == InnovationLaw::Kind::Gaussian) x = g;
        const double qx1 = std::pow(evaluate_form(a1, x), M);
        const double qx2 = std::pow(evaluate_form(a2, x), N);
        const double qg1 = std::pow(evaluate_form(a1, g), M);
        const double qg2 = std::pow(evaluate_form(a2, g), N);
        x1[t] = qx1;
        x2[t] = qx2;
        x12[t] = qx1 * qx2;
        g1[t] = qg1;
        g2[t] = qg2;
        g12[t] = qg1 * qg2;
        d12[t] = qx1 * qx2 - qg1 * qg2;
    });
    const auto mx1 = mean_se(x1), mx2 = mean_se(x2), mx12 = mean_se(x12);
    const auto mg1 = mean_se(g1), mg2 = mean_se(g2), mg12 = mean_se(g12);
    const auto md = mean_se(d12);

    LindebergGap out;
    out.gap_x = mx12.mean - mx1.mean * mx2.mean;
    out.gap_g = mg12.mean - mg1.mean * mg2.mean;
    out.delta = out.gap_x - out.gap_g;
    // the coupled product difference dominates; the centering terms add noise
    out.se = std::sqrt(md.se * md.se + std::pow(mx2.mean * mx1.se, 2) +
                       std::pow(mx1.mean * mx2.se, 2) + std::pow(mg2.mean * mg1.se, 2) +
                       std::pow(mg1.mean * mg2.se, 2));
    return out;
}

}  // namespace chaoskit
