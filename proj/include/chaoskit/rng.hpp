#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chaoskit {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Standard normal cdf.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Inverse standard normal cdf (Wichura's AS241, double precision).
inline double normal_ppf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_ppf: p outside (0,1)");
    const double q = p - 0.5;
    double r, x;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        x = q *
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return x;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -x : x;
}

// Counter-seeded xoshiro256++ stream. Streams are derived purely from the
// (seed, stream, substream) triple, so replicate k of an experiment can draw
// from RngStream(seed, name_hash, k) and results do not depend on how many
// workers the replicate loop was split across.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                       std::uint64_t substream = 0) {
        std::uint64_t mix = seed;
        (void)splitmix64(mix);
        mix ^= 0x6a09e667f3bcc909ULL + stream;
        (void)splitmix64(mix);
        mix ^= 0xbb67ae8584caa73bULL + substream;
        for (auto& w : s_) w = splitmix64(mix);
    }

    RngStream(std::uint64_t seed, std::string_view stream_name, std::uint64_t substream)
        : RngStream(seed, fnv1a64(stream_name), substream) {}

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1): half-integer grid of width 2^-53.
    double uniform01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() { return normal_ppf(uniform01()); }

    // Marsaglia-Tsang; shape < 1 boosted through gamma(shape+1) * U^{1/shape}.
    double gamma(double shape, double scale = 1.0) {
        if (shape <= 0.0 || scale <= 0.0)
            throw std::invalid_argument("gamma: shape and scale must be positive");
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
        }
    }

    // Centered chi-square with nu > 0 degrees of freedom:
    // gamma(shape nu/2, scale 2) - nu.
    double centered_chi_square(double nu) { return gamma(0.5 * nu, 2.0) - nu; }

    double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  private:
    std::uint64_t s_[4];
};

}  // namespace chaoskit
