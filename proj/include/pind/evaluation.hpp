#ifndef PIND_EVALUATION_HPP
#define PIND_EVALUATION_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pind/graph.hpp"
#include "pind/rounding.hpp"
#include "pind/solver.hpp"

namespace pind {

struct Scores {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

/// Directed-edge precision/recall/F against ground truth; weights ignored.
inline Scores f_score(const Graph& inferred, const Graph& truth) {
    if (inferred.node_count() != truth.node_count())
        throw std::invalid_argument("f_score: node-universe mismatch");
    std::size_t tp = 0;
    for (const auto& [key, w] : inferred.edges())
        if (truth.has_edge(key.first, key.second)) ++tp;
    const std::size_t fp = inferred.edge_count() - tp;
    const std::size_t fn = truth.edge_count() - tp;

    Scores s;
    s.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    s.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    s.f = (s.precision + s.recall) > 0.0
              ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
              : 0.0;
    return s;
}

/// Mean absolute error of learned propagation probabilities over the true
/// edges; a true edge whose pair was pruned from the candidate map counts
/// with learned value 0.
inline double alpha_mae(const CandidateMap& candidates,
                        const std::vector<std::vector<double>>& alpha, const Graph& truth) {
    if (truth.edge_count() == 0)
        throw std::invalid_argument("alpha_mae: truth graph has no edges");
    double sum = 0.0;
    for (const auto& [key, w] : truth.edges()) {
        if (!w) throw std::invalid_argument("alpha_mae: truth edge missing weight");
        const auto [j, i] = key;
        double learned = 0.0;
        const auto& parents = candidates.parents[i];
        for (std::size_t k = 0; k < parents.size(); ++k)
            if (parents[k] == j) {
                learned = alpha[i][k];
                break;
            }
        sum += std::fabs(learned - *w);
    }
    return sum / static_cast<double>(truth.edge_count());
}

struct MetricRow {
    int iter = 0;
    double f = 0.0;
    double mae = 0.0;
};

/// Per-iteration accuracy series: each recorded solver snapshot is rounded
/// by sampling and scored against the truth.
inline std::vector<MetricRow> metric_series(const IterationTrace& trace,
                                            const CandidateMap& candidates,
                                            const ObservationMatrix& obs, const Graph& truth,
                                            int r, std::uint64_t rng_seed) {
    if (trace.snapshots.empty())
        throw std::invalid_argument("metric_series: trace has no snapshots");
    std::vector<MetricRow> rows;
    rows.reserve(trace.snapshots.size());
    for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
        const RelaxedState& snap = trace.snapshots[t];
        auto rounded = select_best_sample(snap.x, snap.alpha, obs, candidates, r,
                                          mix64(rng_seed) + t);
        MetricRow row;
        row.iter = trace.rows[t].iter;
        row.f = f_score(rounded.to_graph(candidates), truth).f;
        row.mae = alpha_mae(candidates, snap.alpha, truth);
        rows.push_back(row);
    }
    return rows;
}

} // namespace pind

#endif
