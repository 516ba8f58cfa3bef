#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "chaoskit/multi_index.hpp"

namespace chaoskit {

// Joint moment/cumulant tables are keyed by sorted multisets of component
// indices: the key {j1 <= j2 <= ... <= jm} stands for E[X_{j1}...X_{jm}] or
// kappa(X_{j1},...,X_{jm}). Conversion both ways is by explicit enumeration of
// set partitions; Bell(8) = 4140, so the default cap of order 8 stays cheap.
using IndexMultiset = std::vector<int>;
using MomentTable = std::map<IndexMultiset, double>;

inline constexpr int kMaxCumulantOrder = 8;

// Enumerates set partitions of {0,...,m-1} via restricted growth strings.
// fn receives the partition as a list of blocks of positions.
template <typename Fn>
void for_each_set_partition(int m, Fn&& fn) {
    if (m <= 0) throw std::invalid_argument("for_each_set_partition: m must be >= 1");
    std::vector<int> rgs(m, 0);
    auto emit = [&]() {
        const int nblocks = 1 + *std::max_element(rgs.begin(), rgs.end());
        std::vector<std::vector<int>> blocks(nblocks);
        for (int i = 0; i < m; ++i) blocks[rgs[i]].push_back(i);
        fn(blocks);
    };
    auto rec = [&](auto&& self, int pos, int maxv) -> void {
        if (pos == m) {
            emit();
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[pos] = v;
            self(self, pos + 1, std::max(maxv, v));
        }
    };
    rec(rec, 1, 0);  // rgs[0] is fixed to 0
}

namespace detail {

inline double table_lookup(const MomentTable& t, const IndexMultiset& key,
                           const char* what) {
    auto it = t.find(key);
    if (it == t.end())
        throw std::invalid_argument(std::string(what) + ": missing table entry");
    return it->second;
}

}  // namespace detail

// kappa(X_{j1},...,X_{jm}) = sum over set partitions pi of [m] of
//   (-1)^{|pi|-1} (|pi|-1)! prod_{B in pi} E[prod_{l in B} X_{j_l}].
inline double joint_cumulant(const MomentTable& moments, IndexMultiset key) {
    std::sort(key.begin(), key.end());
    const int m = static_cast<int>(key.size());
    if (m < 1) throw std::invalid_argument("joint_cumulant: empty key");
    if (m > kMaxCumulantOrder)
        throw std::invalid_argument("joint_cumulant: order above the configured cap");
    double total = 0.0;
    for_each_set_partition(m, [&](const std::vector<std::vector<int>>& blocks) {
        const int nb = static_cast<int>(blocks.size());
        double prod = (nb % 2 == 1 ? 1.0 : -1.0) * factorial(nb - 1);
        for (const auto& b : blocks) {
            IndexMultiset sub;
            sub.reserve(b.size());
            for (int pos : b) sub.push_back(key[pos]);
            std::sort(sub.begin(), sub.end());
            prod *= detail::table_lookup(moments, sub, "joint_cumulant");
        }
        total += prod;
    });
    return total;
}

// E[X_{j1}...X_{jm}] = sum over set partitions pi of prod_{B} kappa(B).
inline double joint_moment(const MomentTable& cumulants, IndexMultiset key) {
    std::sort(key.begin(), key.end());
    const int m = static_cast<int>(key.size());
    if (m < 1) throw std::invalid_argument("joint_moment: empty key");
    if (m > kMaxCumulantOrder)
        throw std::invalid_argument("joint_moment: order above the configured cap");
    double total = 0.0;
    for_each_set_partition(m, [&](const std::vector<std::vector<int>>& blocks) {
        double prod = 1.0;
        for (const auto& b : blocks) {
            IndexMultiset sub;
            sub.reserve(b.size());
            for (int pos : b) sub.push_back(key[pos]);
            std::sort(sub.begin(), sub.end());
            prod *= detail::table_lookup(cumulants, sub, "joint_moment");
        }
        total += prod;
    });
    return total;
}

// Converts a full moment table (every key present together with all of its
// sub-multisets) into the cumulant table over the same keys, and back.
inline MomentTable moments_to_cumulants(const MomentTable& moments) {
    MomentTable out;
    for (const auto& [key, v] : moments) out[key] = joint_cumulant(moments, key);
    return out;
}

inline MomentTable cumulants_to_moments(const MomentTable& cumulants) {
    MomentTable out;
    for (const auto& [key, v] : cumulants) out[key] = joint_moment(cumulants, key);
    return out;
}

}  // namespace chaoskit
