#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace chaoskit::detail {

// Complex FFT covering the sizes this library needs: iterative radix-2 for
// powers of two, Bluestein's chirp transform for everything else. Desk-scale
// (n <= 2^17), so no further tuning is warranted.

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size not a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) *
                           (inverse ? 1.0 : -1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

// Arbitrary-size FFT. Bluestein reduces an n-point DFT to a cyclic
// convolution of length >= 2n-1, padded to a power of two. The chirp tables
// depend only on n, so a plan is reusable across many transforms.
class FftPlan {
  public:
    explicit FftPlan(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("FftPlan: empty size");
        if (is_pow2(n)) return;
        m_ = 1;
        while (m_ < 2 * n - 1) m_ <<= 1;
        chirp_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            // angle pi k^2 / n, with k^2 reduced mod 2n to keep precision
            const std::size_t k2 = (k * k) % (2 * n);
            const double ang = std::numbers::pi * static_cast<double>(k2) /
                               static_cast<double>(n);
            chirp_[k] = {std::cos(ang), std::sin(ang)};
        }
        kernel_fft_.assign(m_, {0.0, 0.0});
        kernel_fft_[0] = chirp_[0];
        for (std::size_t k = 1; k < n; ++k) {
            kernel_fft_[k] = chirp_[k];
            kernel_fft_[m_ - k] = chirp_[k];
        }
        fft_pow2(kernel_fft_, false);
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<std::complex<double>>& a) const { run(a, false); }
    void inverse(std::vector<std::complex<double>>& a) const {
        run(a, true);
        const double inv = 1.0 / static_cast<double>(n_);
        for (auto& x : a) x *= inv;
    }

  private:
    void run(std::vector<std::complex<double>>& a, bool inverse) const {
        if (a.size() != n_) throw std::invalid_argument("FftPlan: size mismatch");
        if (is_pow2(n_)) {
            fft_pow2(a, inverse);
            if (inverse) {
                // fft_pow2 already divided by n; undo (caller normalizes)
                const double n = static_cast<double>(n_);
                for (auto& x : a) x *= n;
            }
            return;
        }
        std::vector<std::complex<double>> b(m_, {0.0, 0.0});
        for (std::size_t k = 0; k < n_; ++k) {
            const auto c = inverse ? chirp_[k] : std::conj(chirp_[k]);
            b[k] = a[k] * c;
        }
        fft_pow2(b, false);
        if (inverse) {
            for (std::size_t k = 0; k < m_; ++k) b[k] *= std::conj(kernel_fft_[k]);
        } else {
            for (std::size_t k = 0; k < m_; ++k) b[k] *= kernel_fft_[k];
        }
        fft_pow2(b, true);
        for (std::size_t k = 0; k < n_; ++k) {
            const auto c = inverse ? chirp_[k] : std::conj(chirp_[k]);
            a[k] = b[k] * c;
        }
    }

    std::size_t n_;
    std::size_t m_ = 0;
    std::vector<std::complex<double>> chirp_;
    std::vector<std::complex<double>> kernel_fft_;
};

}  // namespace chaoskit::detail
