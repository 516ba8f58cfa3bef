#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/multi_index.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Contraction of order r:
//   (f (x)_r g)(s, t) = sum over ordered r-tuples k of f(s,k) * g(t,k).
//
// Sparse evaluation sums over sub-multisets kappa instead of ordered tuples:
// the number of ordered tuples with multiset kappa is r!/prod alpha_j!, so
//   (f (x)_r g)(S, T) = sum_kappa (r!/prod alpha!) f(S+kappa) g(T+kappa).
//
// r = 0 is the plain tensor product; r = p = q collapses both blocks and the
// single remaining coefficient equals <f, g>.
inline BipartiteTensor contract(const SymmetricTensor& f, const SymmetricTensor& g,
                                int r) {
    if (f.dim() != g.dim()) throw std::invalid_argument("contract: dimension mismatch");
    const int p = f.order(), q = g.order();
    if (r < 0 || r > std::min(p, q))
        throw std::invalid_argument("contract: r out of range");

    // index the right factor by its r-sub-multisets
    std::map<MultiIndex, std::vector<std::pair<MultiIndex, double>>> by_kappa;
    for (const auto& [mg, vg] : g.coeffs()) {
        for_each_sub_multiset(mg, r, [&](MultiIndex kappa, MultiIndex rest) {
            by_kappa[std::move(kappa)].emplace_back(std::move(rest), vg);
        });
    }

    BipartiteTensor out(p - r, q - r, f.dim());
    for (const auto& [mf, vf] : f.coeffs()) {
        for_each_sub_multiset(mf, r, [&](MultiIndex kappa, MultiIndex s_block) {
            auto it = by_kappa.find(kappa);
            if (it == by_kappa.end()) return;
            const double w = vf * orbit_size(kappa);
            for (const auto& [t_block, vg] : it->second)
                out.accumulate(s_block, t_block, w * vg);
        });
    }
    out.prune();
    return out;
}

// Full symmetrization: the average of t over all (L+R)! slot permutations.
// For a sorted output index m and a bipartite key (A|B) with A+B = m, the
// number of permutations sending an m-orbit tuple to the split (A,B) is
// L! R! prod_j C(m_j, A_j), hence the accumulated weight below.
inline SymmetricTensor symmetrize(const BipartiteTensor& t) {
    const int L = t.left_order(), R = t.right_order();
    const double base = factorial(L) * factorial(R) / factorial(L + R);

    SymmetricTensor out(L + R, t.dim());
    for (const auto& [key, v] : t.coeffs()) {
        const auto& [a, b] = key;
        MultiIndex m = merge_sorted(a, b);
        const auto ma = multiplicities(a);
        const auto mm = multiplicities(m);
        double splits = 1.0;
        std::size_t ja = 0;
        for (const auto& [val, cnt] : mm) {
            int taken = 0;
            if (ja < ma.size() && ma[ja].first == val) taken = ma[ja++].second;
            splits *= binomial(cnt, taken);
        }
        out.accumulate(std::move(m), base * splits * v);
    }
    out.prune();
    return out;
}

inline SymmetricTensor symmetrize_contract(const SymmetricTensor& f,
                                           const SymmetricTensor& g, int r) {
    return symmetrize(contract(f, g, r));
}

// |f (x)_r g|^2 computed through the dual route <f (x)_{p-r} f, g (x)_{q-r} g>,
// an independent cross-check path for the direct contraction norm.
inline double contraction_norm_sq_dual(const SymmetricTensor& f,
                                       const SymmetricTensor& g, int r) {
    if (f.dim() != g.dim())
        throw std::invalid_argument("contraction_norm_sq_dual: dimension mismatch");
    const int p = f.order(), q = g.order();
    if (r < 0 || r > std::min(p, q))
        throw std::invalid_argument("contraction_norm_sq_dual: r out of range");
    return inner(contract(f, f, p - r), contract(g, g, q - r));
}

}  // namespace chaoskit
