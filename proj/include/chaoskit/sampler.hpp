#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoskit/chaos_expansion.hpp"
#include "chaoskit/chaos_vector.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/stats.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Coordinates X(e_k) of the isonormal process on the finite basis: a vector of
// i.i.d. standard normals.
using IsonormalDraw = std::vector<double>;

// Pathwise value of the multiple integral I_q(f) at a draw. For a sorted
// multi-index m with multiplicities alpha_j on distinct indices j,
//   I_q contribution = coeff[m] * (q!/prod alpha_j!) * prod_j H_{alpha_j}(xi_j),
// exact in the draw (no truncation).
class ChaosEvaluator {
  public:
    ChaosEvaluator(int q, const SymmetricTensor& f) : q_(q), dim_(f.dim()) {
        if (f.order() != q) throw std::invalid_argument("ChaosEvaluator: order mismatch");
        for (const auto& [m, v] : f.coeffs()) {
            Entry e;
            e.weight = v * orbit_size(m);
            for (const auto& [idx, a] : multiplicities(m)) e.factors.push_back({idx, a});
            entries_.push_back(std::move(e));
        }
    }

    int order() const { return q_; }
    int dim() const { return dim_; }

    double operator()(const IsonormalDraw& xi) const {
        if (static_cast<int>(xi.size()) != dim_)
            throw std::invalid_argument("ChaosEvaluator: dimension mismatch");
        double total = 0.0;
        for (const auto& e : entries_) {
            double term = e.weight;
            for (const auto& [idx, a] : e.factors) term *= hermite_eval(a, xi[idx - 1]);
            total += term;
        }
        return total;
    }

    // Faster path when H_0..H_qmax(xi_j) are tabulated per coordinate:
    // herm[j][a] = H_a(xi_{j+1}).
    double eval_tabulated(const std::vector<std::vector<double>>& herm) const {
        double total = 0.0;
        for (const auto& e : entries_) {
            double term = e.weight;
            for (const auto& [idx, a] : e.factors) term *= herm[idx - 1][a];
            total += term;
        }
        return total;
    }

  private:
    struct Entry {
        double weight;  // coeff * q!/prod alpha!
        std::vector<std::pair<int, int>> factors;
    };
    int q_;
    int dim_;
    std::vector<Entry> entries_;
};

inline double evaluate_chaos(const SymmetricTensor& f, const IsonormalDraw& xi) {
    return ChaosEvaluator(f.order(), f)(xi);
}

inline double evaluate(const ChaosExpansion& e, const IsonormalDraw& xi) {
    double total = 0.0;
    for (const auto& [q, f] : e.terms()) total += evaluate_chaos(f, xi);
    return total;
}

// Sample matrix: column i holds I_{q_i}(f_i) evaluated on draws shared across
// components, so the joint law of the vector is preserved.
struct SampleMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // columns[i][t]
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Draw t uses substream (seed, stream, t), making the sampling loop safely
// splittable across workers without changing the output.
inline SampleMatrix sample_vector(const ChaosVectorSpec& v, std::size_t n_samples,
                                  std::uint64_t seed, std::uint64_t stream = 0,
                                  int workers = 1) {
    const int d = static_cast<int>(v.components.size());
    int qmax = 0;
    std::vector<ChaosEvaluator> evals;
    evals.reserve(d);
    for (const auto& [q, f] : v.components) {
        evals.emplace_back(q, f);
        qmax = std::max(qmax, q);
    }

    SampleMatrix out;
    out.seed = seed;
    out.stream = stream;
    out.columns.assign(d, std::vector<double>(n_samples));
    for (int i = 0; i < d; ++i) out.names.push_back("comp_" + std::to_string(i + 1));

    parallel_for(n_samples, workers, [&](std::size_t t) {
        RngStream rng(seed, stream, t);
        std::vector<std::vector<double>> herm(v.dim);
        for (int j = 0; j < v.dim; ++j) hermite_values(qmax, rng.normal(), herm[j]);
        for (int i = 0; i < d; ++i) out.columns[i][t] = evals[i].eval_tabulated(herm);
    });
    return out;
}

// Sample mean of prod_i column_i^{k_i} with its standard error.
inline MeanSe empirical_moment(const SampleMatrix& samples, const std::vector<int>& powers) {
    if (powers.size() != samples.columns.size())
        throw std::invalid_argument("empirical_moment: power count != column count");
    const std::size_t n = samples.rows();
    if (n == 0) throw std::invalid_argument("empirical_moment: empty samples");
    std::vector<double> prod(n, 1.0);
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (powers[i] == 0) continue;
        const auto& col = samples.columns[i];
        for (std::size_t t = 0; t < n; ++t) prod[t] *= std::pow(col[t], powers[i]);
    }
    return mean_se(prod);
}

// Kolmogorov-Smirnov sup-distance between the empirical cdf and a reference
// cdf (standard normal by default).
template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    }
    return d;
}

inline double ks_distance(std::vector<double> samples) {
    return ks_distance(std::move(samples), [](double x) { return normal_cdf(x); });
}

struct HypercontractivityCheck {
    double lhs;     // empirical (E|F|^r)^{1/r}
    double lhs_se;  // delta-method SE of lhs
    double rhs;     // (r-1)^{q/2} (E|F|^2)^{1/2}, E|F|^2 analytic
    bool pass;      // lhs <= rhs + 3 * lhs_se
};

inline HypercontractivityCheck hypercontractivity_check(int q, const SymmetricTensor& f,
                                                        int r, std::size_t n_samples,
                                                        std::uint64_t seed) {
    if (r < 2) throw std::invalid_argument("hypercontractivity_check: r must be >= 2");
    ChaosVectorSpec v(f.dim());
    v.add(q, f);
    const SampleMatrix s = sample_vector(v, n_samples, seed, fnv1a64("hypercontractivity"));
    std::vector<double> absr(n_samples);
    for (std::size_t t = 0; t < n_samples; ++t)
        absr[t] = std::pow(std::abs(s.columns[0][t]), r);
    const MeanSe mr = mean_se(absr);
    const double lhs = std::pow(mr.mean, 1.0 / r);
    const double lhs_se = mr.mean > 0.0 ? lhs / (r * mr.mean) * mr.se : 0.0;
    const double rhs =
        std::pow(r - 1.0, 0.5 * q) * std::sqrt(second_moment(q, f));
    return {lhs, lhs_se, rhs, lhs <= rhs + 3.0 * lhs_se};
}

// CSV stream of a sample matrix: header comp_1,...,comp_d, one row per draw.
// The generating seeds go to a JSON sidecar next to the file.
inline void write_samples_csv(const std::filesystem::path& path, const SampleMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_samples_csv: cannot open " + path.string());
    for (std::size_t i = 0; i < m.names.size(); ++i)
        out << (i ? "," : "") << m.names[i];
    out << '\n';
    char buf[40];
    for (std::size_t t = 0; t < m.rows(); ++t) {
        for (std::size_t i = 0; i < m.columns.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", m.columns[i][t]);
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }

    std::filesystem::path sidecar = path;
    sidecar.replace_extension(".seeds.json");
    std::ofstream meta(sidecar, std::ios::binary);
    meta << "{\n  \"seed\": " << m.seed << ",\n  \"stream\": " << m.stream
         << ",\n  \"rows\": " << m.rows() << "\n}\n";
}

}  // namespace chaoskit
