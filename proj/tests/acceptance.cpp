// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are fixed here, not tuned at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pind/oracle.hpp"
#include "pind/pipeline.hpp"

using namespace pind;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

struct Instance {
    CandidateMap cands;
    ObservationMatrix obs;
    RelaxedState state;
};

Instance random_interior_instance(Rng& rng, int max_n, int max_beta,
                                  std::size_t max_pairs) {
    std::uniform_real_distribution<double> s_dist(0.2, 0.9);
    std::uniform_real_distribution<double> v_dist(0.1, 0.9);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    while (true) {
        Instance inst;
        const int n = std::uniform_int_distribution<int>(2, max_n)(rng);
        const int beta = std::uniform_int_distribution<int>(1, max_beta)(rng);
        inst.obs = ObservationMatrix(beta, n);
        for (double& v : inst.obs.values) v = s_dist(rng);
        inst.cands.parents.resize(n);
        inst.state.x.resize(n);
        inst.state.alpha.resize(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (j != i && uni(rng) < 0.4) {
                    inst.cands.parents[i].push_back(j);
                    inst.state.x[i].push_back(v_dist(rng));
                    inst.state.alpha[i].push_back(v_dist(rng));
                }
        const std::size_t pairs = inst.cands.pair_count();
        if (pairs >= 1 && pairs <= max_pairs) return inst;
    }
}

bool criterion_gradients(std::string& msg) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng = make_rng(101);
    int instances = 0;
    double worst = 0.0;
    while (instances < 50) {
        Instance inst = random_interior_instance(rng, 6, 5, 10);
        ++instances;
        for (Block block : {Block::x, Block::alpha}) {
            GradMap analytic = block == Block::x
                                   ? grad_x(inst.state, inst.obs, inst.cands)
                                   : grad_alpha(inst.state, inst.obs, inst.cands);
            GradMap fd = finite_diff_gradient(inst.state, inst.obs, inst.cands, block, 1e-6);
            for (std::size_t i = 0; i < analytic.size(); ++i)
                for (std::size_t k = 0; k < analytic[i].size(); ++k) {
                    const double rel = std::fabs(analytic[i][k] - fd[i][k]) /
                                       std::max(1.0, std::fabs(analytic[i][k]));
                    worst = std::max(worst, rel);
                }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << instances << " instances, worst relative error " << worst << ", " << secs << "s";
    msg = os.str();
    return worst < 1e-4 && secs < 10.0;
}

// shared state for criteria 2 and 3
struct SolverRuns {
    int violations_monotone = 0;
    int violations_strict = 0;
    int violations_feasible = 0;
    int runs = 0;
    bool done = false;
};
SolverRuns g_runs;

void ensure_solver_runs() {
    if (g_runs.done) return;
    Rng rng = make_rng(202);
    std::uniform_int_distribution<int> n_dist(5, 50);
    std::uniform_int_distribution<int> b_dist(10, 100);
    for (int t = 0; t < 20; ++t) {
        RunConfig cfg;
        cfg.n = n_dist(rng);
        cfg.avg_degree = std::min(3.0, cfg.n / 3.0);
        cfg.beta = b_dist(rng);
        cfg.mu = (t % 3) * 0.15;
        cfg.rng_seed = 5000 + t;
        SimulationData data = simulate(cfg);
        PruneResult prune = build_candidate_sets(data.observations);
        if (prune.candidates.pair_count() == 0) continue;
        SolverConfig scfg;
        scfg.record_snapshots = true;
        scfg.max_iter = 200;
        SolveResult res = alternate_maximize(data.observations, prune.candidates, scfg);
        ++g_runs.runs;

        double prev = -std::numeric_limits<double>::infinity();
        for (const auto& row : res.trace.rows) {
            if (row.objective_x < prev - 1e-10) ++g_runs.violations_monotone;
            if (row.stepped_x && !(row.objective_x > prev)) ++g_runs.violations_strict;
            if (row.objective_alpha < row.objective_x - 1e-10) ++g_runs.violations_monotone;
            if (row.stepped_alpha && !(row.objective_alpha > row.objective_x))
                ++g_runs.violations_strict;
            prev = row.objective_alpha;
        }
        for (const auto& snap : res.trace.snapshots)
            for (std::size_t i = 0; i < snap.x.size(); ++i)
                for (std::size_t k = 0; k < snap.x[i].size(); ++k)
                    if (snap.x[i][k] < 0.0 || snap.x[i][k] > 1.0 ||
                        snap.alpha[i][k] < 0.0 || snap.alpha[i][k] > 1.0)
                        ++g_runs.violations_feasible;
    }
    g_runs.done = true;
}

bool criterion_monotone(std::string& msg) {
    ensure_solver_runs();
    std::ostringstream os;
    os << g_runs.runs << " runs, " << g_runs.violations_monotone
       << " monotonicity violations, " << g_runs.violations_strict
       << " strict-increase violations";
    msg = os.str();
    return g_runs.runs >= 20 && g_runs.violations_monotone == 0 &&
           g_runs.violations_strict == 0;
}

bool criterion_feasibility(std::string& msg) {
    ensure_solver_runs();
    std::ostringstream os;
    os << g_runs.runs << " runs, " << g_runs.violations_feasible
       << " out-of-box intermediate entries";
    msg = os.str();
    return g_runs.runs >= 20 && g_runs.violations_feasible == 0;
}

bool criterion_backtracking(std::string& msg) {
    RunConfig cfg;
    cfg.n = 150;
    cfg.beta = 300;
    cfg.mu = 0.3;
    cfg.rng_seed = 42;
    SimulationData data = simulate(cfg);
    InferenceResult result = infer(data.observations, cfg);
    const IterationTrace& trace = result.solve.trace;
    const double frac =
        trace.backtrack_calls > 0
            ? static_cast<double>(trace.null_updates) / trace.backtrack_calls
            : 0.0;
    std::ostringstream os;
    os << trace.backtrack_calls << " backtracks, " << trace.null_updates
       << " null updates (" << frac * 100.0 << "%)";
    msg = os.str();
    return trace.backtrack_calls > 0 && frac < 0.01;
}

bool criterion_oracle_equivalence(std::string& msg) {
    int qualified = 0, matched = 0;
    double worst_gap = 0.0;
    // Near-integral relaxed solutions are the exception, not the rule, so
    // scan a wide seed range to collect enough qualifying instances.
    for (std::uint64_t seed = 0; seed < 600 && qualified < 10; ++seed) {
        RunConfig cfg;
        cfg.n = 3;
        cfg.avg_degree = 2.0 / 3.0; // 2 planted edges
        cfg.beta = 400;
        cfg.mu = 0.0;
        cfg.seed_ratio = 0.34;
        cfg.rng_seed = 9000 + seed;
        SimulationData data = simulate(cfg);
        CandidateMap cands = CandidateMap::complete(3); // 6 pairs <= 8
        SolveResult res = alternate_maximize(data.observations, cands, SolverConfig{});

        bool near_integral = true;
        for (const auto& row : res.state.x)
            for (double v : row)
                if (std::min(v, 1.0 - v) >= 0.05) near_integral = false;
        if (!near_integral) continue;
        ++qualified;

        InferredNetwork net = select_best_sample(res.state.x, res.state.alpha,
                                                 data.observations, cands, 100,
                                                 cfg.rng_seed + 1);
        double best = 0.0;
        exhaustive_binary_optimum(data.observations, cands, res.state.alpha, &best);
        worst_gap = std::max(worst_gap, std::fabs(best - net.objective));
        if (std::fabs(best - net.objective) <= 1e-6) ++matched;
    }
    std::ostringstream os;
    os << qualified << " near-integral instances, " << matched
       << " matched the exhaustive optimum, worst gap " << worst_gap;
    msg = os.str();
    return qualified >= 10 && matched == qualified;
}

bool criterion_protocol_constants(std::string& msg) {
    RunConfig cfg;
    SolverConfig scfg;
    bool ok = cfg.r == 100 && cfg.tol == 0.01 && scfg.tol == 0.01 &&
              cfg.seed_ratio == 0.15 && cfg.alpha_mean == 0.3 && cfg.alpha_std == 0.05;

    Graph g = generate_random_graph(200, 50.0, 2); // 10000 edges
    Graph w = sample_propagation_weights(g, 0.3, 0.05, 31);
    int in_band = 0;
    for (const auto& [key, weight] : w.edges())
        if (*weight >= 0.2 && *weight <= 0.4) ++in_band;
    ok = ok && in_band >= 9400;

    ObservationMatrix bin(20, 20);
    for (std::size_t k = 0; k < bin.values.size(); ++k) bin.values[k] = k % 2;
    ok = ok && inject_uncertainty(bin, 0.0, 1).values == bin.values;

    std::ostringstream os;
    os << "defaults r=" << cfg.r << " tol=" << cfg.tol << " seed_ratio=" << cfg.seed_ratio
       << " weights in [0.2,0.4]: " << in_band << "/10000, mu=0 identity "
       << (ok ? "holds" : "broken");
    msg = os.str();
    return ok;
}

double average_f(const RunConfig& base, int repeats) {
    double sum = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
        RunConfig cfg = base;
        cfg.rng_seed = mix64(base.rng_seed) + rep;
        sum += run_once(cfg).scores.f;
    }
    return sum / repeats;
}

bool criterion_recovery_trend(std::string& msg) {
    RunConfig base;
    base.n = 150;
    base.avg_degree = 4.0;
    base.beta = 300;
    base.rng_seed = 77;

    auto timed_sweep = [&](const RunConfig& cfg, double& secs) {
        const auto t0 = std::chrono::steady_clock::now();
        const double f = average_f(cfg, 10);
        secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return f;
    };

    RunConfig clean = base;
    clean.mu = 0.0;
    RunConfig noisy = base;
    noisy.mu = 0.3;
    RunConfig small_beta = noisy;
    small_beta.beta = 100;

    double secs_mu0 = 0.0, secs_mu3 = 0.0, secs_b100 = 0.0;
    const double f_mu0 = timed_sweep(clean, secs_mu0);
    const double f_mu3 = timed_sweep(noisy, secs_mu3);
    const double f_b100 = timed_sweep(small_beta, secs_b100);
    const double worst_secs = std::max({secs_mu0, secs_mu3, secs_b100});

    std::ostringstream os;
    os << "F(mu=0)=" << f_mu0 << " F(mu=0.3)=" << f_mu3 << " F(beta=100,mu=0.3)=" << f_b100
       << " sweeps " << secs_mu0 << "s / " << secs_mu3 << "s / " << secs_b100 << "s";
    msg = os.str();
    return f_mu0 > f_mu3 && f_mu3 > f_b100 && worst_secs < 300.0;
}

bool criterion_convergence(std::string& msg) {
    RunConfig cfg;
    cfg.n = 150;
    cfg.beta = 300;
    cfg.mu = 0.3;
    cfg.rng_seed = 55;
    SimulationData data = simulate(cfg);
    InferenceResult result = infer(data.observations, cfg, /*record_snapshots=*/true);

    std::vector<double> mae_series;
    for (const auto& snap : result.solve.trace.snapshots)
        mae_series.push_back(alpha_mae(result.prune.candidates, snap.alpha, data.truth));
    if (mae_series.size() < 2) {
        msg = "trace too short";
        return false;
    }
    int non_increasing = 0;
    for (std::size_t t = 1; t < mae_series.size(); ++t)
        if (mae_series[t] <= mae_series[t - 1] + 1e-12) ++non_increasing;
    const double frac = static_cast<double>(non_increasing) / (mae_series.size() - 1);
    std::ostringstream os;
    os << mae_series.size() << " iterations, " << frac * 100.0
       << "% non-increasing steps, MAE " << mae_series.front() << " -> "
       << mae_series.back();
    msg = os.str();
    return frac >= 0.8 && mae_series.back() < mae_series.front();
}

bool criterion_complexity(std::string& msg) {
    RunConfig cfg;
    cfg.n = 150;
    cfg.beta = 300;
    cfg.mu = 0.3;
    cfg.rng_seed = 13;
    SimulationData data = simulate(cfg);
    PruneResult prune = build_candidate_sets(data.observations);

    ObservationMatrix obs100(100, data.observations.n);
    std::copy(data.observations.values.begin(),
              data.observations.values.begin() + obs100.values.size(),
              obs100.values.begin());

    SolverConfig scfg;
    scfg.tol = 1e-12; // fixed iteration budget
    scfg.max_iter = 25;
    auto time_solve = [&](const ObservationMatrix& obs) {
        const auto t0 = std::chrono::steady_clock::now();
        alternate_maximize(obs, prune.candidates, scfg);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    // warm-up to stabilize timings
    time_solve(obs100);
    const double t_b300 = time_solve(data.observations);
    const double t_b100 = time_solve(obs100);
    const double beta_ratio = t_b300 / t_b100;

    // MI phase at beta=100, n doubled: measured ratio vs the predicted 4x
    RunConfig big = cfg;
    big.beta = 100;
    big.n = 300;
    big.rng_seed = 14;
    SimulationData data_big = simulate(big);
    RunConfig small = big;
    small.n = 150;
    SimulationData data_small = simulate(small);
    auto time_mi = [](const ObservationMatrix& obs) {
        const auto t0 = std::chrono::steady_clock::now();
        build_candidate_sets(obs);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    time_mi(data_small.observations);
    const double t_small = time_mi(data_small.observations);
    const double t_big = time_mi(data_big.observations);
    const double mi_ratio = t_big / t_small;

    std::ostringstream os;
    os << "solver beta 300/100 ratio " << beta_ratio << " (want [2,4.5]), MI n 300/150 ratio "
       << mi_ratio << " (budget 6)";
    msg = os.str();
    return beta_ratio >= 2.0 && beta_ratio <= 4.5 && mi_ratio <= 6.0;
}

bool criterion_pruning(std::string& msg) {
    RunConfig cfg;
    cfg.n = 150;
    cfg.beta = 300;
    cfg.mu = 0.0;
    cfg.rng_seed = 88;
    SimulationData data = simulate(cfg);
    PruneResult prune = build_candidate_sets(data.observations);

    std::size_t kept = 0;
    for (const auto& [key, w] : data.truth.edges()) {
        const auto& parents = prune.candidates.parents[key.second];
        if (std::find(parents.begin(), parents.end(), key.first) != parents.end()) ++kept;
    }
    const double recall = static_cast<double>(kept) / data.truth.edge_count();
    const double retained = static_cast<double>(prune.candidates.pair_count()) /
                            (static_cast<double>(cfg.n) * (cfg.n - 1));
    std::ostringstream os;
    os << "true-edge recall " << recall * 100.0 << "%, retained pairs " << retained * 100.0
       << "%";
    msg = os.str();
    return recall >= 0.9 && retained < 0.3;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"gradient correctness vs finite differences", criterion_gradients},
        {"monotone likelihood across solver runs", criterion_monotone},
        {"feasibility of every intermediate state", criterion_feasibility},
        {"backtracking termination and null-update rate", criterion_backtracking},
        {"rounding matches exhaustive optimum at tiny scale", criterion_oracle_equivalence},
        {"protocol constants honored", criterion_protocol_constants},
        {"end-to-end recovery trends over mu and beta", criterion_recovery_trend},
        {"per-iteration alpha-MAE convergence", criterion_convergence},
        {"complexity scaling in beta and n", criterion_complexity},
        {"MI pruning recall and retention", criterion_pruning},
    };

    int failures = 0;
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[c].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %zu: %s (%s)\n", ok ? "PASS" : "FAIL", c + 1,
                    criteria[c].name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
