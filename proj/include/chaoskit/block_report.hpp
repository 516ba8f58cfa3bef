#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoskit/chaos_vector.hpp"
#include "chaoskit/independence.hpp"

namespace chaoskit {

inline constexpr double kIndependenceTol = 1e-8;

// Exact-algebra independence diagnostics for every pair of components taken
// from different blocks: the covariance of squares and the full ladder of
// contraction norms r = 1..q_i^q_j. A pair is flagged independent when all of
// them sit below tol.
struct PairReport {
    int i;
    int j;
    double cov_squares;
    std::vector<double> contraction_norms;
    bool independent;
};

struct BlockIndependenceReport {
    double tol;
    std::vector<PairReport> pairs;
    bool all_independent;
};

inline BlockIndependenceReport block_independence_report(
    const ChaosVectorSpec& v, const std::vector<std::vector<int>>& blocks,
    double tol = kIndependenceTol) {
    const int d = static_cast<int>(v.size());
    std::vector<int> block_of(d, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (int i : blocks[b]) {
            if (i < 0 || i >= d)
                throw std::invalid_argument("block_independence_report: index out of range");
            if (block_of[i] != -1)
                throw std::invalid_argument("block_independence_report: blocks overlap");
            block_of[i] = static_cast<int>(b);
        }
    }
    for (int i = 0; i < d; ++i)
        if (block_of[i] == -1)
            throw std::invalid_argument("block_independence_report: blocks must partition");

    BlockIndependenceReport out;
    out.tol = tol;
    out.all_independent = true;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (block_of[i] == block_of[j]) continue;
            const auto& [qi, fi] = v.components[i];
            const auto& [qj, fj] = v.components[j];
            PairReport pr;
            pr.i = i;
            pr.j = j;
            pr.cov_squares = cov_squares(qi, fi, qj, fj);
            bool ok = pr.cov_squares <= tol;
            for (int r = 1; r <= std::min(qi, qj); ++r) {
                pr.contraction_norms.push_back(contract(fi, fj, r).norm());
                ok = ok && pr.contraction_norms.back() <= tol;
            }
            pr.independent = ok;
            out.all_independent = out.all_independent && ok;
            out.pairs.push_back(std::move(pr));
        }
    }
    return out;
}

inline nlohmann::ordered_json to_json(const BlockIndependenceReport& r) {
    nlohmann::ordered_json j;
    j["tol"] = r.tol;
    j["all_independent"] = r.all_independent;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : r.pairs) {
        nlohmann::ordered_json pj;
        pj["pair"] = {p.i, p.j};
        pj["cov_squares"] = p.cov_squares;
        pj["contraction_norms"] = p.contraction_norms;
        pj["flag"] = p.independent ? "independent" : "dependent";
        j["pairs"].push_back(std::move(pj));
    }
    return j;
}

}  // namespace chaoskit
