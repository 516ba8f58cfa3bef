#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "chaoskit/contraction.hpp"
#include "chaoskit/gencs.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Randomized checks of the algebraic norm identities. Each residual function
// evaluates both sides independently (left via symmetrize/contract, right via
// contraction norms) and returns the relative gap. The symmetrizer is
// injectable so the test harness can verify that a corrupted implementation
// actually trips the suite.

using SymmetrizeFn = std::function<SymmetricTensor(const BipartiteTensor&)>;

inline SymmetrizeFn default_symmetrizer() {
    return [](const BipartiteTensor& t) { return symmetrize(t); };
}

inline double relative_gap(double lhs, double rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

// |f ~(x) g|^2 = p!q!/(p+q)! sum_r C(p,r) C(q,r) |f (x)_r g|^2
inline double symmetrized_norm_residual(const SymmetricTensor& f, const SymmetricTensor& g,
                                        const SymmetrizeFn& sym = default_symmetrizer()) {
    const int p = f.order(), q = g.order();
    const double lhs = sym(contract(f, g, 0)).norm_sq();
    double rhs = 0.0;
    for (int r = 0; r <= std::min(p, q); ++r)
        rhs += binomial(p, r) * binomial(q, r) * contract(f, g, r).norm_sq();
    rhs *= factorial(p) * factorial(q) / factorial(p + q);
    return relative_gap(lhs, rhs);
}

// (2q)! <f1 ~(x) f2, f3 ~(x) f4> =
//   sum_{r=1}^{q-1} q!^2 C(q,r)^2 <f1 (x)_r f3, f4 (x)_r f2>
//   + q!^2 (<f1,f3><f2,f4> + <f1,f4><f2,f3>)
inline double four_tensor_residual(const SymmetricTensor& f1, const SymmetricTensor& f2,
                                   const SymmetricTensor& f3, const SymmetricTensor& f4,
                                   const SymmetrizeFn& sym = default_symmetrizer()) {
    const int q = f1.order();
    const double lhs = factorial(2 * q) *
                       inner(sym(contract(f1, f2, 0)), sym(contract(f3, f4, 0)));
    const double qf = factorial(q);
    double rhs = 0.0;
    for (int r = 1; r <= q - 1; ++r) {
        const double b = binomial(q, r);
        rhs += qf * qf * b * b * inner(contract(f1, f3, r), contract(f4, f2, r));
    }
    rhs += qf * qf *
           (inner(f1, f3) * inner(f2, f4) + inner(f1, f4) * inner(f2, f3));
    return relative_gap(lhs, rhs);
}

// For f of order 2q and g of order q:
// <f ~(x)_q f, g ~(x) g> = 2 q!^2/(2q)! <f (x)_q f, g (x) g>
//   + q!^2/(2q)! sum_{r=1}^{q-1} C(q,r)^2 <f (x)_r g, g (x)_r f>
inline double mixed_order_residual(const SymmetricTensor& f, const SymmetricTensor& g,
                                   const SymmetrizeFn& sym = default_symmetrizer()) {
    const int q = g.order();
    const double lhs = inner(sym(contract(f, f, q)), sym(contract(g, g, 0)));
    const double qf = factorial(q);
    const double tqf = factorial(2 * q);
    double rhs = 2.0 * qf * qf / tqf * inner(contract(f, f, q), contract(g, g, 0));
    for (int r = 1; r <= q - 1; ++r) {
        const double b = binomial(q, r);
        rhs += qf * qf / tqf * b * b * inner(contract(f, g, r), contract(g, f, r));
    }
    return relative_gap(lhs, rhs);
}

// |f (x)_r g|^2 against the dual route <f (x)_{p-r} f, g (x)_{q-r} g>.
inline double contraction_dual_residual(const SymmetricTensor& f, const SymmetricTensor& g,
                                        int r) {
    const double direct = contract(f, g, r).norm_sq();
    const double dual = contraction_norm_sq_dual(f, g, r);
    return relative_gap(direct, dual);
}

// Random sparse tensor: nnz distinct sorted keys over [1,d]^q, coefficients
// uniform on [-1,1].
inline SymmetricTensor random_symmetric_tensor(RngStream& rng, int q, int d,
                                               int nnz) {
    SymmetricTensor t(q, d);
    for (int tries = 0; tries < 16 * nnz && static_cast<int>(t.nnz()) < nnz; ++tries) {
        MultiIndex m(q);
        for (int k = 0; k < q; ++k)
            m[k] = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
        std::sort(m.begin(), m.end());
        t.set(std::move(m), 2.0 * rng.uniform01() - 1.0);
    }
    return t;
}

inline GenCsInstance random_gencs_instance(RngStream& rng, int max_slots = 6,
                                           int max_atoms = 5) {
    GenCsInstance in;
    for (;;) {
        in.n_slots = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_slots - 1));
        const int q = 2 + static_cast<int>(rng.next_u64() % 3);
        std::vector<std::vector<int>> sets(q);
        for (int e = 1; e <= in.n_slots; ++e) {
            const int a = static_cast<int>(rng.next_u64() % q);
            int b = static_cast<int>(rng.next_u64() % q);
            while (b == a) b = static_cast<int>(rng.next_u64() % q);
            sets[a].push_back(e);
            sets[b].push_back(e);
        }
        bool ok = true;
        for (const auto& s : sets) ok = ok && !s.empty();
        if (!ok) continue;
        in.covers = std::move(sets);
        break;
    }
    const int atoms = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_atoms - 1));
    in.weights.resize(atoms);
    for (double& w : in.weights) w = 0.1 + 1.9 * rng.uniform01();
    in.h.resize(in.covers.size());
    for (std::size_t i = 0; i < in.covers.size(); ++i) {
        std::size_t len = 1;
        for (std::size_t k = 0; k < in.covers[i].size(); ++k) len *= atoms;
        in.h[i].resize(len);
        for (double& v : in.h[i]) v = 2.0 * rng.uniform01() - 1.0;
    }
    return in;
}

// One suite run over all identities at the given trial count. Residual
// tolerance 1e-10; generalized Cauchy-Schwarz orderings may undershoot by at
// most 1e-12.
struct IdentitySuiteResult {
    int trials;
    double max_sym_norm_residual = 0.0;
    double max_four_tensor_residual = 0.0;
    double max_mixed_order_residual = 0.0;
    double max_dual_residual = 0.0;
    double min_gencs_slack = 0.0;  // min of (rhs - lhs) and (rhs - rhs1) slacks
    bool pass = true;
};

inline IdentitySuiteResult run_identity_suite(std::uint64_t seed, int trials,
                                              double tol = 1e-10,
                                              const SymmetrizeFn& sym = default_symmetrizer()) {
    IdentitySuiteResult out;
    out.trials = trials;
    RngStream rng(seed, "identity-suite", 0);
    auto rand_order = [&](int lo, int hi) {
        return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    };

    for (int t = 0; t < trials; ++t) {
        const int d = rand_order(2, 6);
        {
            const int p = rand_order(1, 4), q = rand_order(1, 4);
            const auto f = random_symmetric_tensor(rng, p, d, rand_order(1, 6));
            const auto g = random_symmetric_tensor(rng, q, d, rand_order(1, 6));
            out.max_sym_norm_residual =
                std::max(out.max_sym_norm_residual, symmetrized_norm_residual(f, g, sym));
            const int r = rand_order(0, std::min(p, q));
            out.max_dual_residual =
                std::max(out.max_dual_residual, contraction_dual_residual(f, g, r));
        }
        {
            const int q = rand_order(1, 3);
            const auto f1 = random_symmetric_tensor(rng, q, d, rand_order(1, 5));
            const auto f2 = random_symmetric_tensor(rng, q, d, rand_order(1, 5));
            const auto f3 = random_symmetric_tensor(rng, q, d, rand_order(1, 5));
            const auto f4 = random_symmetric_tensor(rng, q, d, rand_order(1, 5));
            out.max_four_tensor_residual = std::max(
                out.max_four_tensor_residual, four_tensor_residual(f1, f2, f3, f4, sym));
        }
        {
            const int q = rand_order(1, 2);
            const auto f = random_symmetric_tensor(rng, 2 * q, d, rand_order(1, 6));
            const auto g = random_symmetric_tensor(rng, q, d, rand_order(1, 5));
            out.max_mixed_order_residual =
                std::max(out.max_mixed_order_residual, mixed_order_residual(f, g, sym));
        }
        {
            const auto inst = random_gencs_instance(rng);
            const auto r = generalized_cs_check(inst);
            const double scale = 1.0 + r.rhs_gencs;
            const double slack1 = (r.rhs_gencs1 - r.lhs) / scale;
            const double slack2 = (r.rhs_gencs - r.rhs_gencs1) / scale;
            if (t == 0) {
                out.min_gencs_slack = std::min(slack1, slack2);
            } else {
                out.min_gencs_slack = std::min({out.min_gencs_slack, slack1, slack2});
            }
        }
    }
    out.pass = out.max_sym_norm_residual <= tol && out.max_four_tensor_residual <= tol &&
               out.max_mixed_order_residual <= tol && out.max_dual_residual <= tol &&
               (trials == 0 || out.min_gencs_slack >= -1e-12);
    return out;
}

}  // namespace chaoskit
