#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chaoskit {

// A multi-index is a sorted (non-decreasing) tuple of 1-based basis indices.
// Sorted tuples are the canonical representatives of the permutation orbits
// of ordered index tuples; all sparse tensor maps are keyed by them.
using MultiIndex = std::vector<int>;

inline double factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    // binomials of small integers are exact in double; round away noise
    return std::round(b);
}

inline bool is_sorted_index(const MultiIndex& m) {
    return std::is_sorted(m.begin(), m.end());
}

inline MultiIndex sorted_index(MultiIndex m) {
    std::sort(m.begin(), m.end());
    return m;
}

// (value, multiplicity) pairs of a sorted multi-index.
inline std::vector<std::pair<int, int>> multiplicities(const MultiIndex& m) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        out.emplace_back(m[i], static_cast<int>(j - i));
        i = j;
    }
    return out;
}

// Number of distinct ordered tuples in the orbit of a sorted multi-index:
// q! / prod_j alpha_j! over the multiplicities alpha_j.
inline double orbit_size(const MultiIndex& m) {
    double n = factorial(static_cast<int>(m.size()));
    for (const auto& [v, a] : multiplicities(m)) n /= factorial(a);
    return n;
}

inline MultiIndex merge_sorted(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Removes one copy of each entry of `sub` from `m` (both sorted).
// Precondition: sub is a sub-multiset of m.
inline MultiIndex multiset_difference(const MultiIndex& m, const MultiIndex& sub) {
    MultiIndex out;
    out.reserve(m.size() - sub.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (j < sub.size() && m[i] == sub[j]) {
            ++j;
        } else {
            out.push_back(m[i]);
        }
    }
    if (j != sub.size())
        throw std::invalid_argument("multiset_difference: not a sub-multiset");
    return out;
}

// Enumerates every sub-multiset of size r of a sorted multi-index, together
// with the complementary multiset. Visits each distinct sub-multiset once.
template <typename Fn>
void for_each_sub_multiset(const MultiIndex& m, int r, Fn&& fn) {
    const auto mult = multiplicities(m);
    const int groups = static_cast<int>(mult.size());
    std::vector<int> take(groups, 0);

    // counts chosen per distinct value, lexicographic enumeration
    auto emit = [&]() {
        MultiIndex sub, rest;
        sub.reserve(r);
        rest.reserve(m.size() - r);
        for (int g = 0; g < groups; ++g) {
            sub.insert(sub.end(), take[g], mult[g].first);
            rest.insert(rest.end(), mult[g].second - take[g], mult[g].first);
        }
        fn(std::move(sub), std::move(rest));
    };

    auto rec = [&](auto&& self, int g, int remaining) -> void {
        if (g == groups) {
            if (remaining == 0) emit();
            return;
        }
        int hi = std::min(remaining, mult[g].second);
        for (int t = 0; t <= hi; ++t) {
            take[g] = t;
            self(self, g + 1, remaining - t);
        }
        take[g] = 0;
    };
    if (r < 0 || r > static_cast<int>(m.size())) return;
    rec(rec, 0, r);
}

}  // namespace chaoskit
