#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/multi_index.hpp"

namespace chaoskit {

// Coefficients whose magnitude falls below this after arithmetic are dropped,
// so cancellation does not leave fill-in behind.
inline constexpr double kCoeffPruneTol = 1e-14;

// Sparse symmetric tensor over a finite orthonormal basis {e_1,...,e_d}.
//
// Storage follows the function-value convention: the value stored at a sorted
// multi-index equals the value of the symmetric coefficient function at every
// ordered tuple in that orbit. Consequently
//     |f|^2 = sum over ordered tuples f(...)^2 = sum_m orbit(m) * coeff[m]^2.
class SymmetricTensor {
  public:
    SymmetricTensor(int order, int dim) : order_(order), dim_(dim) {
        if (order < 0) throw std::invalid_argument("SymmetricTensor: order must be >= 0");
        if (dim < 1) throw std::invalid_argument("SymmetricTensor: dim must be >= 1");
    }

    int order() const { return order_; }
    int dim() const { return dim_; }
    std::size_t nnz() const { return coeffs_.size(); }
    const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }

    void set(MultiIndex m, double v) {
        validate_key(m);
        std::sort(m.begin(), m.end());
        if (v == 0.0)
            coeffs_.erase(m);
        else
            coeffs_[std::move(m)] = v;
    }

    void accumulate(MultiIndex m, double v) {
        validate_key(m);
        std::sort(m.begin(), m.end());
        coeffs_[std::move(m)] += v;
    }

    // Value of the coefficient function at a (not necessarily sorted) tuple.
    double at(MultiIndex m) const {
        std::sort(m.begin(), m.end());
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& [m, v] : coeffs_) s += orbit_size(m) * v * v;
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    void prune(double tol = kCoeffPruneTol) {
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            if (std::abs(it->second) < tol)
                it = coeffs_.erase(it);
            else
                ++it;
        }
    }

    bool same_shape(const SymmetricTensor& o) const {
        return order_ == o.order_ && dim_ == o.dim_;
    }

  private:
    void validate_key(const MultiIndex& m) const {
        if (static_cast<int>(m.size()) != order_)
            throw std::invalid_argument("SymmetricTensor: key length != order");
        for (int i : m)
            if (i < 1 || i > dim_)
                throw std::invalid_argument("SymmetricTensor: index out of [1, dim]");
    }

    int order_;
    int dim_;
    std::map<MultiIndex, double> coeffs_;
};

// Output of a contraction f (x)_r g: symmetric within each slot block but not
// across them. Keys are pairs of sorted multi-indices (left block, right block).
class BipartiteTensor {
  public:
    using Key = std::pair<MultiIndex, MultiIndex>;

    BipartiteTensor(int left_order, int right_order, int dim)
        : left_order_(left_order), right_order_(right_order), dim_(dim) {
        if (left_order < 0 || right_order < 0)
            throw std::invalid_argument("BipartiteTensor: negative block order");
        if (dim < 1) throw std::invalid_argument("BipartiteTensor: dim must be >= 1");
    }

    int left_order() const { return left_order_; }
    int right_order() const { return right_order_; }
    int order() const { return left_order_ + right_order_; }
    int dim() const { return dim_; }
    std::size_t nnz() const { return coeffs_.size(); }
    const std::map<Key, double>& coeffs() const { return coeffs_; }

    void set(MultiIndex l, MultiIndex r, double v) {
        validate_key(l, r);
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        Key k{std::move(l), std::move(r)};
        if (v == 0.0)
            coeffs_.erase(k);
        else
            coeffs_[std::move(k)] = v;
    }

    void accumulate(MultiIndex l, MultiIndex r, double v) {
        validate_key(l, r);
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        coeffs_[Key{std::move(l), std::move(r)}] += v;
    }

    double at(MultiIndex l, MultiIndex r) const {
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        auto it = coeffs_.find(Key{std::move(l), std::move(r)});
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    // Norm over ordered tuples in each block separately.
    double norm_sq() const {
        double s = 0.0;
        for (const auto& [k, v] : coeffs_)
            s += orbit_size(k.first) * orbit_size(k.second) * v * v;
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    void prune(double tol = kCoeffPruneTol) {
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            if (std::abs(it->second) < tol)
                it = coeffs_.erase(it);
            else
                ++it;
        }
    }

    bool same_shape(const BipartiteTensor& o) const {
        return left_order_ == o.left_order_ && right_order_ == o.right_order_ &&
               dim_ == o.dim_;
    }

  private:
    void validate_key(const MultiIndex& l, const MultiIndex& r) const {
        if (static_cast<int>(l.size()) != left_order_ ||
            static_cast<int>(r.size()) != right_order_)
            throw std::invalid_argument("BipartiteTensor: key block length mismatch");
        for (const auto* blk : {&l, &r})
            for (int i : *blk)
                if (i < 1 || i > dim_)
                    throw std::invalid_argument("BipartiteTensor: index out of [1, dim]");
    }

    int left_order_;
    int right_order_;
    int dim_;
    std::map<Key, double> coeffs_;
};

// h^{(x)q}: coefficient at (i_1,...,i_q) equals prod_j h_{i_j}.
inline SymmetricTensor tensor_power(const std::vector<double>& h, int q) {
    if (h.empty()) throw std::invalid_argument("tensor_power: empty vector");
    if (q < 0) throw std::invalid_argument("tensor_power: negative order");
    const int d = static_cast<int>(h.size());
    SymmetricTensor out(q, d);

    std::vector<int> support;
    for (int i = 0; i < d; ++i)
        if (h[i] != 0.0) support.push_back(i + 1);

    MultiIndex key(q);
    auto rec = [&](auto&& self, int pos, std::size_t from, double prod) -> void {
        if (pos == q) {
            out.set(key, prod);
            return;
        }
        for (std::size_t s = from; s < support.size(); ++s) {
            key[pos] = support[s];
            self(self, pos + 1, s, prod * h[support[s] - 1]);
        }
    };
    if (q == 0) {
        out.set({}, 1.0);
    } else {
        rec(rec, 0, 0, 1.0);
    }
    return out;
}

inline SymmetricTensor scale(const SymmetricTensor& f, double alpha,
                             double prune_tol = kCoeffPruneTol) {
    SymmetricTensor out(f.order(), f.dim());
    for (const auto& [m, v] : f.coeffs()) out.set(m, alpha * v);
    out.prune(prune_tol);
    return out;
}

inline SymmetricTensor add(const SymmetricTensor& a, const SymmetricTensor& b,
                           double prune_tol = kCoeffPruneTol) {
    if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
    SymmetricTensor out = a;
    for (const auto& [m, v] : b.coeffs()) out.accumulate(m, v);
    out.prune(prune_tol);
    return out;
}

inline SymmetricTensor operator*(double alpha, const SymmetricTensor& f) {
    return scale(f, alpha);
}
inline SymmetricTensor operator+(const SymmetricTensor& a, const SymmetricTensor& b) {
    return add(a, b);
}
inline SymmetricTensor operator-(const SymmetricTensor& a, const SymmetricTensor& b) {
    return add(a, scale(b, -1.0));
}

// Inner product over ordered tuples; shapes must match exactly.
inline double inner(const SymmetricTensor& a, const SymmetricTensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("inner: shape mismatch");
    const auto& small = a.nnz() <= b.nnz() ? a : b;
    const auto& large = a.nnz() <= b.nnz() ? b : a;
    double s = 0.0;
    for (const auto& [m, v] : small.coeffs()) {
        auto it = large.coeffs().find(m);
        if (it != large.coeffs().end()) s += orbit_size(m) * v * it->second;
    }
    return s;
}

// Inner product over the full ordered-tuple space H^{(x) n}. The block splits
// of the two factors may differ (positional pairing): when a is split (La, Ra)
// and b is split (Lb, Rb) with La >= Lb, the shared ordered tuple decomposes
// into segments of sizes Lb | La-Lb | Ra, and the sum runs over the multiset
// contents of each segment with its orbit multiplicity.
inline double inner(const BipartiteTensor& a, const BipartiteTensor& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        throw std::invalid_argument("inner: shape mismatch");
    if (a.left_order() < b.left_order()) return inner(b, a);

    if (a.left_order() == b.left_order()) {
        const auto& small = a.nnz() <= b.nnz() ? a : b;
        const auto& large = a.nnz() <= b.nnz() ? b : a;
        double s = 0.0;
        for (const auto& [k, v] : small.coeffs()) {
            auto it = large.coeffs().find(k);
            if (it != large.coeffs().end())
                s += orbit_size(k.first) * orbit_size(k.second) * v * it->second;
        }
        return s;
    }

    const int lb = b.left_order();
    double s = 0.0;
    for (const auto& [ka, va] : a.coeffs()) {
        const auto& [al, ar] = ka;
        for_each_sub_multiset(al, lb, [&](MultiIndex m1, MultiIndex m2) {
            auto it = b.coeffs().find({m1, merge_sorted(m2, ar)});
            if (it != b.coeffs().end())
                s += orbit_size(m1) * orbit_size(m2) * orbit_size(ar) * va * it->second;
        });
    }
    return s;
}

inline double norm(const SymmetricTensor& a) { return a.norm(); }
inline double norm(const BipartiteTensor& a) { return a.norm(); }

// A symmetric tensor of order p viewed as a bipartite tensor with blocks
// (left, p-left): the value at (A|B) is f(A ++ B) for every split.
inline BipartiteTensor split_bipartite(const SymmetricTensor& f, int left_order) {
    if (left_order < 0 || left_order > f.order())
        throw std::invalid_argument("split_bipartite: bad left order");
    BipartiteTensor out(left_order, f.order() - left_order, f.dim());
    for (const auto& [m, v] : f.coeffs()) {
        for_each_sub_multiset(m, left_order, [&](MultiIndex sub, MultiIndex rest) {
            out.set(std::move(sub), std::move(rest), v);
        });
    }
    return out;
}

}  // namespace chaoskit
