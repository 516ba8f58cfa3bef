#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chaoskit {

// Numerical verifier for the generalized Cauchy-Schwarz inequality on a finite
// discrete measure space.
//
// Setup: C coordinate slots, cover sets c_1..c_q over [C] with every element
// of [C] contained in exactly two of the c_i, functions h_i on A^{|c_i|} over
// a weighted atom set A. The verifier evaluates
//   lhs        = | integral over A^C of prod_i h_i(z_{c_i}) |,
//   rhs_gencs  = prod_i |h_i|,
//   rhs_gencs1 = |h_j (x)_{c0} h_k| * prod_{i != j,k} |h_i|
// for the first overlapping pair (j,k), and the chain
//   lhs <= rhs_gencs1 <= rhs_gencs
// is expected to hold (the second step is plain Cauchy-Schwarz on the pair).

struct GenCsInstance {
    int n_slots;                           // C
    std::vector<std::vector<int>> covers;  // c_i as sorted 1-based slot lists
    std::vector<double> weights;           // atom weights mu(a) > 0
    std::vector<std::vector<double>> h;    // h[i] dense over tuples A^{|c_i|}, row-major
};

struct GenCsResult {
    double lhs;
    double rhs_gencs;
    double rhs_gencs1;
    int pair_j;
    int pair_k;
};

namespace detail {

inline std::size_t tuple_rank(const std::vector<int>& tuple, std::size_t n_atoms) {
    std::size_t r = 0;
    for (int a : tuple) r = r * n_atoms + static_cast<std::size_t>(a);
    return r;
}

}  // namespace detail

inline void validate_cover(const GenCsInstance& in) {
    if (in.n_slots < 1) throw std::invalid_argument("gencs: C must be >= 1");
    std::vector<int> count(in.n_slots + 1, 0);
    for (const auto& c : in.covers) {
        if (c.empty()) throw std::invalid_argument("gencs: empty cover set");
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] <= c[i - 1]) throw std::invalid_argument("gencs: cover set not sorted/unique");
        for (int e : c) {
            if (e < 1 || e > in.n_slots) throw std::invalid_argument("gencs: slot out of range");
            ++count[e];
        }
    }
    for (int e = 1; e <= in.n_slots; ++e)
        if (count[e] != 2)
            throw std::invalid_argument(
                "gencs: every element of [C] must appear in exactly two cover sets");
}

inline GenCsResult generalized_cs_check(const GenCsInstance& in) {
    validate_cover(in);
    const std::size_t n_atoms = in.weights.size();
    if (n_atoms == 0) throw std::invalid_argument("gencs: no atoms");
    for (double w : in.weights)
        if (!(w > 0.0)) throw std::invalid_argument("gencs: weights must be positive");
    const std::size_t q = in.covers.size();
    if (in.h.size() != q) throw std::invalid_argument("gencs: one function per cover set");
    for (std::size_t i = 0; i < q; ++i) {
        std::size_t want = 1;
        for (std::size_t k = 0; k < in.covers[i].size(); ++k) want *= n_atoms;
        if (in.h[i].size() != want)
            throw std::invalid_argument("gencs: h table size mismatch");
    }

    // lhs: brute-force sum over all z in A^C
    std::vector<int> z(in.n_slots, 0);
    double lhs = 0.0;
    for (;;) {
        double term = 1.0;
        for (int e = 0; e < in.n_slots; ++e) term *= in.weights[z[e]];
        for (std::size_t i = 0; i < q; ++i) {
            std::vector<int> sub;
            sub.reserve(in.covers[i].size());
            for (int e : in.covers[i]) sub.push_back(z[e - 1]);
            term *= in.h[i][detail::tuple_rank(sub, n_atoms)];
        }
        lhs += term;
        int pos = in.n_slots - 1;
        while (pos >= 0 && z[pos] + 1 == static_cast<int>(n_atoms)) z[pos--] = 0;
        if (pos < 0) break;
        ++z[pos];
    }
    lhs = std::abs(lhs);

    // weighted L2 norms
    auto norm_of = [&](std::size_t i) {
        const auto& c = in.covers[i];
        std::vector<int> u(c.size(), 0);
        double s = 0.0;
        for (;;) {
            double w = 1.0;
            for (int a : u) w *= in.weights[a];
            const double v = in.h[i][detail::tuple_rank(u, n_atoms)];
            s += w * v * v;
            int pos = static_cast<int>(c.size()) - 1;
            while (pos >= 0 && u[pos] + 1 == static_cast<int>(n_atoms)) u[pos--] = 0;
            if (pos < 0) break;
            ++u[pos];
        }
        return std::sqrt(s);
    };

    double rhs = 1.0;
    for (std::size_t i = 0; i < q; ++i) rhs *= norm_of(i);

    // first overlapping pair (j, k)
    int pj = -1, pk = -1;
    for (std::size_t j = 0; j + 1 < q && pj < 0; ++j) {
        for (std::size_t k = j + 1; k < q; ++k) {
            std::vector<int> isect;
            std::set_intersection(in.covers[j].begin(), in.covers[j].end(),
                                  in.covers[k].begin(), in.covers[k].end(),
                                  std::back_inserter(isect));
            if (!isect.empty()) {
                pj = static_cast<int>(j);
                pk = static_cast<int>(k);
                break;
            }
        }
    }
    if (pj < 0)
        throw std::invalid_argument("gencs: no overlapping pair of cover sets");

    // |h_j (x)_{c0} h_k| over the symmetric difference of the pair's slots
    const auto& cj = in.covers[pj];
    const auto& ck = in.covers[pk];
    std::vector<int> c0, sym_diff;
    std::set_intersection(cj.begin(), cj.end(), ck.begin(), ck.end(),
                          std::back_inserter(c0));
    std::set_symmetric_difference(cj.begin(), cj.end(), ck.begin(), ck.end(),
                                  std::back_inserter(sym_diff));

    // assemble z over union slots; read off subtuples for h_j, h_k
    std::vector<int> uni;
    std::set_union(cj.begin(), cj.end(), ck.begin(), ck.end(), std::back_inserter(uni));
    auto positions = [&](const std::vector<int>& sub) {
        std::vector<int> pos;
        for (int e : sub)
            pos.push_back(static_cast<int>(
                std::lower_bound(uni.begin(), uni.end(), e) - uni.begin()));
        return pos;
    };
    const auto pos_j = positions(cj), pos_k = positions(ck), pos_d = positions(sym_diff),
               pos_0 = positions(c0);

    std::size_t n_diff_tuples = 1;
    for (std::size_t k = 0; k < sym_diff.size(); ++k) n_diff_tuples *= n_atoms;
    std::vector<double> contracted(n_diff_tuples, 0.0);

    std::vector<int> zu(uni.size(), 0);
    for (;;) {
        double w0 = 1.0;
        for (int p : pos_0) w0 *= in.weights[zu[p]];
        std::vector<int> tj, tk, td;
        for (int p : pos_j) tj.push_back(zu[p]);
        for (int p : pos_k) tk.push_back(zu[p]);
        for (int p : pos_d) td.push_back(zu[p]);
        contracted[detail::tuple_rank(td, n_atoms)] +=
            w0 * in.h[pj][detail::tuple_rank(tj, n_atoms)] *
            in.h[pk][detail::tuple_rank(tk, n_atoms)];
        int pos = static_cast<int>(uni.size()) - 1;
        while (pos >= 0 && zu[pos] + 1 == static_cast<int>(n_atoms)) zu[pos--] = 0;
        if (pos < 0) break;
        ++zu[pos];
    }

    // weighted norm of the contraction; when c_j == c_k this degenerates to
    // the absolute scalar <h_j, h_k>
    double contracted_norm_sq = 0.0;
    {
        std::vector<int> td(sym_diff.size(), 0);
        for (;;) {
            double w = 1.0;
            for (int a : td) w *= in.weights[a];
            const double v = contracted[detail::tuple_rank(td, n_atoms)];
            contracted_norm_sq += w * v * v;
            int pos = static_cast<int>(sym_diff.size()) - 1;
            while (pos >= 0 && td[pos] + 1 == static_cast<int>(n_atoms)) td[pos--] = 0;
            if (pos < 0) break;
            ++td[pos];
        }
    }

    double rhs1 = std::sqrt(contracted_norm_sq);
    for (std::size_t i = 0; i < q; ++i)
        if (static_cast<int>(i) != pj && static_cast<int>(i) != pk) rhs1 *= norm_of(i);

    return {lhs, rhs, rhs1, pj, pk};
}

}  // namespace chaoskit
