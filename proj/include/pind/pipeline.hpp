#ifndef PIND_PIPELINE_HPP
#define PIND_PIPELINE_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "pind/cascade.hpp"
#include "pind/evaluation.hpp"
#include "pind/graph.hpp"
#include "pind/mutual_info.hpp"
#include "pind/rounding.hpp"
#include "pind/solver.hpp"

namespace pind {

/// One experiment configuration: data generation, solver, and rounding
/// parameters. Defaults follow the standard protocol used throughout.
struct RunConfig {
    int n = 100;
    double avg_degree = 4.0;
    int beta = 300;
    double seed_ratio = 0.15;
    double alpha_mean = 0.3;
    double alpha_std = 0.05;
    double mu = 0.3;
    int r = 100;
    double tol = 0.01;
    int max_iter = 1000;
    std::uint64_t rng_seed = 1;

    SolverConfig solver() const {
        SolverConfig c;
        c.tol = tol;
        c.max_iter = max_iter;
        c.rng_seed = rng_seed;
        return c;
    }
};

struct SimulationData {
    Graph truth;            // weighted ground-truth network
    SeedSet seeds;
    ObservationMatrix observations;
};

/// Generate (or weight) a graph, run beta cascades, inject uncertainty.
/// Seeds for the sub-steps are derived from config.rng_seed so the whole
/// pipeline is a deterministic function of the config.
inline SimulationData simulate(const RunConfig& config,
                               const std::optional<Graph>& base_graph = std::nullopt) {
    SimulationData data{Graph(0), {}, {}};
    Graph structure = base_graph ? *base_graph
                                 : generate_random_graph(config.n, config.avg_degree,
                                                         mix64(config.rng_seed) + 1);
    data.truth = sample_propagation_weights(structure, config.alpha_mean, config.alpha_std,
                                            mix64(config.rng_seed) + 2);
    data.seeds = select_seeds(structure.node_count(), config.seed_ratio, config.beta,
                              mix64(config.rng_seed) + 3);
    ObservationMatrix exact = simulate_binary(data.truth, data.seeds,
                                              mix64(config.rng_seed) + 4);
    data.observations = inject_uncertainty(exact, config.mu, mix64(config.rng_seed) + 5);
    return data;
}

struct InferenceResult {
    PruneResult prune;
    SolveResult solve;
    InferredNetwork network;
    double runtime_seconds = 0.0;
};

/// Prune candidates, run the alternating maximization, round by sampling.
inline InferenceResult infer(const ObservationMatrix& obs, const RunConfig& config,
                             bool record_snapshots = false) {
    const auto start = std::chrono::steady_clock::now();
    InferenceResult result;
    result.prune = build_candidate_sets(obs);
    SolverConfig solver_cfg = config.solver();
    solver_cfg.record_snapshots = record_snapshots;
    result.solve = alternate_maximize(obs, result.prune.candidates, solver_cfg);
    result.network = select_best_sample(result.solve.state.x, result.solve.state.alpha, obs,
                                        result.prune.candidates, config.r,
                                        mix64(config.rng_seed) + 6);
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

struct RunMetrics {
    Scores scores;
    double mae = 0.0;
    int iterations = 0;
    double runtime_seconds = 0.0;
};

/// Full simulate -> infer -> evaluate round trip for one config.
inline RunMetrics run_once(const RunConfig& config) {
    SimulationData data = simulate(config);
    InferenceResult inf = infer(data.observations, config);
    RunMetrics m;
    m.scores = f_score(inf.network.to_graph(inf.prune.candidates), data.truth);
    m.mae = alpha_mae(inf.prune.candidates, inf.network.alpha, data.truth);
    m.iterations = static_cast<int>(inf.solve.trace.rows.size());
    m.runtime_seconds = inf.runtime_seconds;
    return m;
}

} // namespace pind

#endif
