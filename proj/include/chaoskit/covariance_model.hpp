#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chaoskit {

// Stationary covariance sequence r(k) with r(0) = 1 (unit variance) and
// r(-k) = r(k). Two families:
//   - summable: r given directly, with a certified tail bound for
//     sum_{k > K} |r(k)|^q so series can be truncated rigorously;
//   - regularly varying: r(k) = k^{-D} L(k) with D > 0 and L slowly varying
//     (default L = 1). L must be bounded on compacts; this is documented,
//     not enforced.
class CovarianceModel {
  public:
    enum class Kind { Summable, RegVar };

    static CovarianceModel white() {
        CovarianceModel m;
        m.kind_ = Kind::Summable;
        m.label_ = "white";
        m.r_ = [](std::int64_t k) { return k == 0 ? 1.0 : 0.0; };
        m.tail_bound_ = [](std::int64_t, int) { return 0.0; };
        m.sum_r_pow_ = [](int q) { return 1.0 + 0.0 * q; };
        return m;
    }

    static CovarianceModel geometric(double rho) {
        if (!(std::abs(rho) < 1.0))
            throw std::invalid_argument("geometric: need |rho| < 1");
        CovarianceModel m;
        m.kind_ = Kind::Summable;
        m.label_ = "geometric(rho=" + std::to_string(rho) + ")";
        m.r_ = [rho](std::int64_t k) { return std::pow(rho, std::abs(static_cast<double>(k))); };
        m.tail_bound_ = [rho](std::int64_t K, int q) {
            const double a = std::pow(std::abs(rho), q);
            // 2 sum_{k > K} a^k = 2 a^{K+1} / (1 - a)
            return 2.0 * std::pow(a, static_cast<double>(K + 1)) / (1.0 - a);
        };
        m.sum_r_pow_ = [rho](int q) {
            const double a = std::pow(rho, q);
            return (1.0 + a) / (1.0 - a);
        };
        return m;
    }

    // r(k) = values[k-1] for 1 <= k <= len, 0 beyond.
    static CovarianceModel finite_lags(std::vector<double> values) {
        CovarianceModel m;
        m.kind_ = Kind::Summable;
        m.label_ = "finite_lags(" + std::to_string(values.size()) + ")";
        auto vals = std::make_shared<std::vector<double>>(std::move(values));
        m.r_ = [vals](std::int64_t k) {
            const std::int64_t a = std::abs(k);
            if (a == 0) return 1.0;
            return a <= static_cast<std::int64_t>(vals->size()) ? (*vals)[a - 1] : 0.0;
        };
        m.tail_bound_ = [vals](std::int64_t K, int) {
            return K >= static_cast<std::int64_t>(vals->size()) ? 0.0
                 : std::numeric_limits<double>::infinity();
        };
        m.sum_r_pow_ = [vals](int q) {
            double s = 1.0;
            for (double v : *vals) s += 2.0 * std::pow(v, q);
            return s;
        };
        return m;
    }

    // Positive semidefinite representative of the regularly varying family:
    // r(k) = (1+k)^{-D} = k^{-D} L(k) with L(k) = (k/(1+k))^D -> 1. The plain
    // power law k^{-D} with L = 1 is NOT a covariance sequence (r(1) = r(0)
    // forces degenerate adjacent samples and the lag-3 Toeplitz form is
    // already indefinite); this shifted version is convex and decreasing, so
    // both the Toeplitz matrices and their circulant embeddings are PSD.
    static CovarianceModel long_range(double D) {
        if (!(D > 0.0)) throw std::invalid_argument("long_range: need D > 0");
        CovarianceModel m;
        m.kind_ = Kind::RegVar;
        m.exponent_ = D;
        m.label_ = "long_range(D=" + std::to_string(D) + ")";
        m.slowly_varying_ = [D](double x) {
            return std::pow(x / (1.0 + x), D);
        };
        m.r_ = [D](std::int64_t k) {
            return std::pow(1.0 + std::abs(static_cast<double>(k)), -D);
        };
        // sum_{k in Z} (1+|k|)^{-s} = 2 zeta(s) - 1 for s = qD > 1
        m.sum_r_pow_ = [D](int q) {
            const double s = q * D;
            if (s <= 1.0)
                throw std::invalid_argument("long_range: sum of |r|^q diverges (qD <= 1)");
            return 2.0 * std::riemann_zeta(s) - 1.0;
        };
        m.tail_bound_ = [D](std::int64_t K, int q) {
            const double s = q * D;
            if (s <= 1.0) return std::numeric_limits<double>::infinity();
            return 2.0 * std::pow(static_cast<double>(K + 1), 1.0 - s) / (s - 1.0);
        };
        return m;
    }

    static CovarianceModel regularly_varying(double D,
                                             std::function<double(double)> L = {}) {
        if (!(D > 0.0)) throw std::invalid_argument("regularly_varying: need D > 0");
        CovarianceModel m;
        m.kind_ = Kind::RegVar;
        m.exponent_ = D;
        m.label_ = "regvar(D=" + std::to_string(D) + ")";
        const bool default_l = !L;
        m.slowly_varying_ = default_l ? [](double) { return 1.0; } : std::move(L);
        auto lfun = m.slowly_varying_;
        m.r_ = [D, lfun](std::int64_t k) {
            if (k == 0) return 1.0;
            const double a = std::abs(static_cast<double>(k));
            return std::pow(a, -D) * lfun(a);
        };
        if (default_l) {
            // sum_{k in Z} k^{-qD} = 1 + 2 zeta(qD), valid for qD > 1
            m.sum_r_pow_ = [D](int q) {
                const double s = q * D;
                if (s <= 1.0)
                    throw std::invalid_argument(
                        "regularly_varying: sum of |r|^q diverges (qD <= 1)");
                return 1.0 + 2.0 * std::riemann_zeta(s);
            };
            m.tail_bound_ = [D](std::int64_t K, int q) {
                const double s = q * D;
                if (s <= 1.0) return std::numeric_limits<double>::infinity();
                // 2 sum_{k > K} k^{-s} <= 2 K^{1-s} / (s - 1)
                return 2.0 * std::pow(static_cast<double>(K), 1.0 - s) / (s - 1.0);
            };
        }
        return m;
    }

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    // regvar exponent D
    double exponent() const {
        if (kind_ != Kind::RegVar)
            throw std::logic_error("CovarianceModel: exponent only for regvar models");
        return exponent_;
    }
    double slowly_varying(double x) const {
        if (kind_ != Kind::RegVar)
            throw std::logic_error("CovarianceModel: L only for regvar models");
        return slowly_varying_(x);
    }

    double r(std::int64_t k) const { return r_(k); }

    bool has_tail_bound() const { return static_cast<bool>(tail_bound_); }
    double tail_bound(std::int64_t K, int q) const {
        if (!tail_bound_)
            throw std::logic_error("CovarianceModel: no certified tail bound");
        return tail_bound_(K, q);
    }

    bool has_closed_form_sum() const { return static_cast<bool>(sum_r_pow_); }
    double sum_r_pow(int q) const {
        if (!sum_r_pow_)
            throw std::logic_error("CovarianceModel: no closed-form power sum");
        return sum_r_pow_(q);
    }

  private:
    CovarianceModel() = default;

    Kind kind_ = Kind::Summable;
    std::string label_;
    double exponent_ = 0.0;
    std::function<double(double)> slowly_varying_;
    std::function<double(std::int64_t)> r_;
    std::function<double(std::int64_t, int)> tail_bound_;
    std::function<double(int)> sum_r_pow_;
};

}  // namespace chaoskit
