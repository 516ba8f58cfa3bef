#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/covariance_model.hpp"
#include "chaoskit/fft.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact stationary Gaussian sampling by circulant embedding. The n-lag
// Toeplitz covariance embeds into the circulant of size M = 2(n-1) with first
// row (r0, r1, ..., r_{n-1}, r_{n-2}, ..., r1); when all circulant eigenvalues
// are nonnegative, one complex FFT of sqrt(lambda)-weighted standard normals
// yields two independent paths with the exact finite-n covariance (real and
// imaginary parts). Eigenvalues within the floor -1e-8 are clipped to zero;
// anything lower means the embedding fails and a dense Cholesky of the n x n
// Toeplitz matrix takes over for n <= 4096.
class PathSampler {
  public:
    static constexpr double kEigenvalueFloor = -1e-8;
    static constexpr std::size_t kCholeskyLimit = 4096;

    PathSampler(const CovarianceModel& model, std::size_t n) : n_(n) {
        if (n < 2) throw std::invalid_argument("PathSampler: need n >= 2");
        std::vector<double> r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = model.r(static_cast<std::int64_t>(k));

        const std::size_t m = 2 * (n - 1);
        std::vector<std::complex<double>> c(m);
        for (std::size_t k = 0; k < n; ++k) c[k] = r[k];
        for (std::size_t k = 1; k + 1 < n; ++k) c[m - k] = r[k];

        plan_ = std::make_unique<detail::FftPlan>(m);
        plan_->forward(c);

        double min_ev = 0.0;
        sqrt_ev_.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double ev = c[k].real();
            min_ev = std::min(min_ev, ev);
            sqrt_ev_[k] = std::sqrt(std::max(ev, 0.0));
        }
        if (min_ev < kEigenvalueFloor) {
            // embedding failed; dense fallback if the size allows it
            sqrt_ev_.clear();
            plan_.reset();
            if (n > kCholeskyLimit)
                throw NumericalError(
                    "gaussian_path: circulant embedding has eigenvalue " +
                    std::to_string(min_ev) + " < -1e-8 and n exceeds the dense "
                    "Cholesky fallback size (invalid model/size)");
            build_cholesky(r);
        }
    }

    std::size_t length() const { return n_; }
    bool used_fallback() const { return !chol_.empty(); }

    // Two independent exact paths from one stream.
    std::pair<std::vector<double>, std::vector<double>> sample_pair(RngStream& rng) const {
        if (!chol_.empty()) return {sample_cholesky(rng), sample_cholesky(rng)};
        const std::size_t m = sqrt_ev_.size();
        std::vector<std::complex<double>> w(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double u = rng.normal();
            const double v = rng.normal();
            w[k] = sqrt_ev_[k] * std::complex<double>(u, v);
        }
        plan_->inverse(w);
        const double scale = std::sqrt(static_cast<double>(m));
        std::vector<double> a(n_), b(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            a[j] = w[j].real() * scale;
            b[j] = w[j].imag() * scale;
        }
        return {std::move(a), std::move(b)};
    }

    std::vector<double> sample(RngStream& rng) const {
        return sample_pair(rng).first;
    }

  private:
    void build_cholesky(const std::vector<double>& r) {
        const std::size_t n = n_;
        chol_.assign(n, std::vector<double>());
        for (std::size_t i = 0; i < n; ++i) chol_[i].assign(i + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double sum = r[i - j];
                for (std::size_t k = 0; k < j; ++k) sum -= chol_[i][k] * chol_[j][k];
                if (i == j) {
                    if (sum <= 0.0)
                        throw NumericalError(
                            "gaussian_path: Toeplitz covariance not positive definite "
                            "(invalid model/size)");
                    chol_[i][j] = std::sqrt(sum);
                } else {
                    chol_[i][j] = sum / chol_[j][j];
                }
            }
        }
    }

    std::vector<double> sample_cholesky(RngStream& rng) const {
        std::vector<double> z(n_);
        for (auto& x : z) x = rng.normal();
        std::vector<double> out(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += chol_[i][j] * z[j];
            out[i] = s;
        }
        return out;
    }

    std::size_t n_;
    std::unique_ptr<detail::FftPlan> plan_;
    std::vector<double> sqrt_ev_;
    std::vector<std::vector<double>> chol_;
};

// One-shot convenience: the stationary path of length n for replicate
// `substream` of the given seed.
inline std::vector<double> gaussian_path(const CovarianceModel& model, std::size_t n,
                                         std::uint64_t seed, std::uint64_t substream = 0) {
    PathSampler sampler(model, n);
    RngStream rng(seed, "gaussian_path", substream);
    return sampler.sample(rng);
}

}  // namespace chaoskit
