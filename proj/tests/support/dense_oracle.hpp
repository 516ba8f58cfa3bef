#pragma once

// Brute-force dense reference implementations used only by tests: ordered
// tuples are materialized explicitly and symmetrization averages over all
// (p+q)! permutations. Feasible for order sums <= 6 and dim <= 4.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit::testing {

struct DenseTensor {
    int order;
    int dim;
    std::vector<double> v;  // size dim^order, ordered-tuple values, 0-based radix

    DenseTensor(int order_, int dim_)
        : order(order_), dim(dim_), v(pow_size(dim_, order_), 0.0) {}

    static std::size_t pow_size(int d, int q) {
        std::size_t s = 1;
        for (int i = 0; i < q; ++i) s *= static_cast<std::size_t>(d);
        return s;
    }

    std::size_t rank(const std::vector<int>& tuple) const {
        std::size_t r = 0;
        for (int t : tuple) r = r * dim + static_cast<std::size_t>(t - 1);
        return r;
    }

    std::vector<int> unrank(std::size_t r) const {
        std::vector<int> tuple(order);
        for (int k = order - 1; k >= 0; --k) {
            tuple[k] = static_cast<int>(r % dim) + 1;
            r /= dim;
        }
        return tuple;
    }
};

inline DenseTensor to_dense(const SymmetricTensor& f) {
    DenseTensor d(f.order(), f.dim());
    for (std::size_t r = 0; r < d.v.size(); ++r) d.v[r] = f.at(d.unrank(r));
    return d;
}

inline DenseTensor to_dense(const BipartiteTensor& t) {
    DenseTensor d(t.order(), t.dim());
    for (std::size_t r = 0; r < d.v.size(); ++r) {
        auto tuple = d.unrank(r);
        MultiIndex l(tuple.begin(), tuple.begin() + t.left_order());
        MultiIndex rr(tuple.begin() + t.left_order(), tuple.end());
        d.v[r] = t.at(std::move(l), std::move(rr));
    }
    return d;
}

// (f (x)_r g)(s,t) = sum over ordered r-tuples k of f(s,k) g(t,k)
inline DenseTensor dense_contract(const DenseTensor& f, const DenseTensor& g, int r) {
    if (f.dim != g.dim) throw std::invalid_argument("dense_contract: dim mismatch");
    const int p = f.order, q = g.order;
    DenseTensor out(p + q - 2 * r, f.dim);
    const std::size_t ns = DenseTensor::pow_size(f.dim, p - r);
    const std::size_t nt = DenseTensor::pow_size(f.dim, q - r);
    const std::size_t nk = DenseTensor::pow_size(f.dim, r);
    for (std::size_t si = 0; si < ns; ++si) {
        for (std::size_t ti = 0; ti < nt; ++ti) {
            double acc = 0.0;
            for (std::size_t ki = 0; ki < nk; ++ki)
                acc += f.v[si * nk + ki] * g.v[ti * nk + ki];
            out.v[si * nt + ti] = acc;
        }
    }
    return out;
}

inline DenseTensor dense_symmetrize(const DenseTensor& t) {
    DenseTensor out(t.order, t.dim);
    std::vector<int> perm(t.order);
    std::iota(perm.begin(), perm.end(), 0);
    const double count = factorial(t.order);
    do {
        for (std::size_t r = 0; r < out.v.size(); ++r) {
            const auto tuple = out.unrank(r);
            std::vector<int> permuted(t.order);
            for (int k = 0; k < t.order; ++k) permuted[k] = tuple[perm[k]];
            out.v[r] += t.v[t.rank(permuted)] / count;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline double dense_inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.order != b.order || a.dim != b.dim)
        throw std::invalid_argument("dense_inner: shape mismatch");
    double s = 0.0;
    for (std::size_t r = 0; r < a.v.size(); ++r) s += a.v[r] * b.v[r];
    return s;
}

inline double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
    if (a.order != b.order || a.dim != b.dim)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t r = 0; r < a.v.size(); ++r)
        m = std::max(m, std::abs(a.v[r] - b.v[r]));
    return m;
}

}  // namespace chaoskit::testing
