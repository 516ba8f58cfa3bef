#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "chaoskit/contraction.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Second moment E[I_q(f)^2] = q! |f|^2 of a single chaos term. The q = 0
// convention: the "moment" of a constant term is its square.
inline double second_moment(int q, const SymmetricTensor& f) {
    if (f.order() != q) throw std::invalid_argument("second_moment: order mismatch");
    return factorial(q) * f.norm_sq();
}

// A finite chaos decomposition sum_q I_q(f_q): at most one term per order,
// orders kept strictly increasing by the map. Chaoses of different orders are
// orthogonal, so the second moment is the sum of the per-term moments.
class ChaosExpansion {
  public:
    explicit ChaosExpansion(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("ChaosExpansion: dim must be >= 1");
    }

    int dim() const { return dim_; }
    const std::map<int, SymmetricTensor>& terms() const { return terms_; }

    bool has_order(int q) const { return terms_.count(q) != 0; }
    const SymmetricTensor& term(int q) const {
        auto it = terms_.find(q);
        if (it == terms_.end()) throw std::invalid_argument("ChaosExpansion: no such order");
        return it->second;
    }

    void add_term(int q, const SymmetricTensor& f) {
        if (f.dim() != dim_) throw std::invalid_argument("ChaosExpansion: dim mismatch");
        if (f.order() != q) throw std::invalid_argument("ChaosExpansion: order mismatch");
        auto it = terms_.find(q);
        if (it == terms_.end()) {
            if (f.nnz() > 0) terms_.emplace(q, f);
        } else {
            it->second = add(it->second, f);
            if (it->second.nnz() == 0) terms_.erase(it);
        }
    }

    double second_moment() const {
        double s = 0.0;
        for (const auto& [q, f] : terms_) s += chaoskit::second_moment(q, f);
        return s;
    }

  private:
    int dim_;
    std::map<int, SymmetricTensor> terms_;
};

// Multiplication formula for two chaos terms:
//   I_p(f) I_q(g) = sum_{r=0}^{p^q} r! C(p,r) C(q,r) I_{p+q-2r}(f ~(x)_r g),
// with the combinatorial coefficients folded into the returned tensors.
inline ChaosExpansion multiply(int p, const SymmetricTensor& f, int q,
                               const SymmetricTensor& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("multiply: dimension mismatch");
    if (f.order() != p || g.order() != q)
        throw std::invalid_argument("multiply: order mismatch");
    ChaosExpansion out(f.dim());
    for (int r = 0; r <= std::min(p, q); ++r) {
        const double coef = factorial(r) * binomial(p, r) * binomial(q, r);
        out.add_term(p + q - 2 * r, scale(symmetrize_contract(f, g, r), coef));
    }
    return out;
}

}  // namespace chaoskit
