#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace chaoskit {

// Pairwise (cascade) summation: deterministic and stable regardless of how a
// parallel producer filled the array.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

inline MeanSe mean_se(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean_se: empty sample");
    const double n = static_cast<double>(v.size());
    const double m = pairwise_sum(v) / n;
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m) * (v[i] - m);
    const double var = v.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
    return {m, std::sqrt(var / n)};
}

inline MeanSe mean_se(const std::vector<double>& v) {
    return mean_se(std::span<const double>(v));
}

// A moment-based statistic with a jackknife standard error. The statistic is
// expressed as a function of the plain moment means (mean of x, x^2, ...), so
// leave-one-out recomputation costs O(n) total.
class JackknifeStat {
  public:
    // powers: which raw moments the statistic consumes, e.g. {1,2,3} for the
    // third central moment. fn maps the vector of raw-moment means to the value.
    JackknifeStat(std::vector<int> powers,
                  std::function<double(const std::vector<double>&)> fn)
        : powers_(std::move(powers)), fn_(std::move(fn)) {}

    struct Result {
        double value;
        double se;
    };

    Result evaluate(std::span<const double> sample) const {
        const std::size_t n = sample.size();
        if (n < 2) throw std::invalid_argument("JackknifeStat: need >= 2 samples");
        const std::size_t k = powers_.size();
        std::vector<std::vector<double>> pw(k, std::vector<double>(n));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) pw[j][i] = std::pow(sample[i], powers_[j]);
        std::vector<double> sums(k);
        for (std::size_t j = 0; j < k; ++j) sums[j] = pairwise_sum(pw[j]);

        std::vector<double> means(k);
        for (std::size_t j = 0; j < k; ++j) means[j] = sums[j] / static_cast<double>(n);
        const double full = fn_(means);

        double loo_mean = 0.0;
        std::vector<double> loo(n);
        std::vector<double> m(k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                m[j] = (sums[j] - pw[j][i]) / static_cast<double>(n - 1);
            loo[i] = fn_(m);
            loo_mean += loo[i];
        }
        loo_mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
        const double se =
            std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
        return {full, se};
    }

  private:
    std::vector<int> powers_;
    std::function<double(const std::vector<double>&)> fn_;
};

// kappa_3 and kappa_4 of a scalar sample (central), with jackknife SEs.
inline JackknifeStat::Result sample_kappa3(std::span<const double> x) {
    static const JackknifeStat stat({1, 2, 3}, [](const std::vector<double>& m) {
        return m[2] - 3.0 * m[1] * m[0] + 2.0 * m[0] * m[0] * m[0];
    });
    return stat.evaluate(x);
}

inline JackknifeStat::Result sample_kappa4(std::span<const double> x) {
    static const JackknifeStat stat({1, 2, 3, 4}, [](const std::vector<double>& m) {
        const double mu = m[0];
        const double c2 = m[1] - mu * mu;
        const double c4 = m[3] - 4.0 * m[2] * mu + 6.0 * m[1] * mu * mu - 3.0 * mu * mu * mu * mu;
        return c4 - 3.0 * c2 * c2;
    });
    return stat.evaluate(x);
}

// Deterministic-output parallel loop: fn(i) must write only to slot i of some
// preallocated output. Exceptions are captured and rethrown on the caller.
inline void parallel_for(std::size_t count, int workers,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < count; i += nthreads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace chaoskit
