#ifndef PIND_SOLVER_HPP
#define PIND_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pind/likelihood.hpp"

namespace pind {

struct SolverConfig {
    double tol = 0.01;       // convergence threshold on per-entry variation
    int max_iter = 1000;     // outer-iteration cap
    int max_halvings = 60;   // cap on m and k in backtracking
    double init_x = 0.5;
    double init_alpha = 0.5;
    std::uint64_t rng_seed = 0;
    bool record_snapshots = false;

    void validate() const {
        if (tol <= 0.0) throw std::invalid_argument("SolverConfig: tol must be > 0");
        if (max_iter < 1 || max_halvings < 1)
            throw std::invalid_argument("SolverConfig: caps must be >= 1");
        if (init_x < 0.0 || init_x > 1.0 || init_alpha < 0.0 || init_alpha > 1.0)
            throw std::invalid_argument("SolverConfig: initializers must be in [0,1]");
    }
};

struct IterationRecord {
    int iter = 0;
    double objective_x = 0.0;     // objective after the x-block update
    double objective_alpha = 0.0; // objective after the alpha-block update
    int m = 0;                    // largest halving count used in the x-block
    int k = 0;                    // largest halving count used in the alpha-block
    double max_variation = 0.0;
    bool stepped_x = false;       // any node took a nonzero x step
    bool stepped_alpha = false;
};

struct IterationTrace {
    std::vector<IterationRecord> rows;
    std::vector<RelaxedState> snapshots; // per iteration, when recorded
    long backtrack_calls = 0;            // invocations with a nonzero direction
    long null_updates = 0;               // backtracks that exhausted the cap
};

enum class Block { x, alpha };

/// Boundary-aware ascent direction: zero out gradient components that point
/// outside the box at active bounds, keep the rest.
inline std::vector<double> project_direction(const std::vector<double>& values,
                                             const std::vector<double>& gradient) {
    constexpr double bound_tol = 1e-12;
    std::vector<double> dir(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values[k];
        const double g = gradient[k];
        if ((v <= bound_tol && g < 0.0) || (v >= 1.0 - bound_tol && g > 0.0))
            dir[k] = 0.0;
        else
            dir[k] = g;
    }
    return dir;
}

/// Largest step keeping every entry inside [0,1]; +inf iff the direction is
/// all-zero.
inline double max_feasible_step(const std::vector<double>& values,
                                const std::vector<double>& direction) {
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double d = direction[k];
        if (d < 0.0)
            bound = std::min(bound, values[k] / -d);
        else if (d > 0.0)
            bound = std::min(bound, (1.0 - values[k]) / d);
    }
    return bound;
}

struct StepResult {
    double step = 0.0;
    int halvings = 0;
    bool null_update = false; // cap exhausted, state unchanged
};

namespace detail {

inline void apply_step(std::vector<double>& block, const std::vector<double>& base,
                       const std::vector<double>& direction, double step) {
    for (std::size_t k = 0; k < block.size(); ++k)
        block[k] = std::clamp(base[k] + step * direction[k], 0.0, 1.0);
}

/// Node objective from precomputed log-factors lf[l*k + c] =
/// log(max(1 - s_parent alpha, eps)); the factors do not depend on x, so
/// the x-block can reuse them across all backtracking trials.
inline double objective_from_log_factors(const std::vector<double>& x,
                                         const std::vector<double>& s_child,
                                         const std::vector<double>& lf, int beta) {
    const std::size_t k = x.size();
    double total = 0.0;
    for (int l = 0; l < beta; ++l) {
        const double* row = lf.data() + static_cast<std::size_t>(l) * k;
        double log_pi = 0.0;
        for (std::size_t c = 0; c < k; ++c) log_pi += x[c] * row[c];
        const double s = s_child[l];
        if (s > 0.0) total += s * std::log(std::max(1.0 - std::exp(log_pi), kLogEps));
        if (s < 1.0) total += (1.0 - s) * log_pi;
    }
    return total;
}

} // namespace detail

/// Step-halving backtrack on one node's block: smallest m in
/// 0..max_halvings with a strict objective increase at step theta_max/2^m.
/// Exhausting the cap leaves the state unchanged.
inline StepResult backtrack_step(RelaxedState& state, const ObservationMatrix& obs,
                                 const CandidateMap& candidates, Block block, int node,
                                 const std::vector<double>& direction, double theta_max,
                                 int max_halvings) {
    std::vector<double>& target = block == Block::x ? state.x[node] : state.alpha[node];
    const std::vector<double> base = target;
    const double f_old = objective_node(state, obs, candidates, node);

    double step = theta_max;
    for (int m = 0; m <= max_halvings; ++m, step *= 0.5) {
        detail::apply_step(target, base, direction, step);
        if (objective_node(state, obs, candidates, node) > f_old)
            return {step, m, false};
    }
    target = base;
    return {0.0, max_halvings, true};
}

struct SolveResult {
    RelaxedState state;
    IterationTrace trace;
};

/// Alternating maximization: per outer iteration, a projected-gradient
/// ascent step on the x-block, then on the alpha-block, each per child node
/// (the objective decomposes exactly over nodes). Stops when the largest
/// entry change in an iteration drops below tol.
inline SolveResult alternate_maximize(const ObservationMatrix& obs,
                                      const CandidateMap& candidates,
                                      const SolverConfig& config) {
    config.validate();
    if (candidates.pair_count() == 0)
        throw std::invalid_argument("alternate_maximize: empty candidate map");

    SolveResult result;
    result.state = RelaxedState::filled(candidates, config.init_x, config.init_alpha);
    RelaxedState& state = result.state;
    IterationTrace& trace = result.trace;

    const int beta = obs.beta;
    const int n = candidates.n();

    // Cached per-node objective values; every accepted step refreshes its
    // node's entry, so full-objective recomputation is never needed.
    std::vector<double> node_obj(n, 0.0);
    for (int i = 0; i < n; ++i) node_obj[i] = objective_node(state, obs, candidates, i);

    std::vector<double> grad, lf, s_child, sj;

    // Accepts the first strictly improving halved step, evaluated by `eval`
    // on trial values written into `target`. Returns false on a null update.
    auto backtrack = [&](std::vector<double>& target, const std::vector<double>& dir,
                         double bound, double f_old, auto&& eval, double* f_new,
                         int* halvings) {
        const std::vector<double> base = target;
        double step = bound;
        for (int m = 0; m <= config.max_halvings; ++m, step *= 0.5) {
            detail::apply_step(target, base, dir, step);
            const double f = eval();
            if (f > f_old) {
                *f_new = f;
                *halvings = m;
                return true;
            }
        }
        target = base;
        return false;
    };

    auto record_variation = [](const std::vector<double>& before,
                               const std::vector<double>& after, double* max_var) {
        for (std::size_t k = 0; k < before.size(); ++k)
            *max_var = std::max(*max_var, std::fabs(after[k] - before[k]));
    };

    auto update_x = [&](int* max_halvings_used, double* max_var, bool* stepped) {
        for (int i = 0; i < n; ++i) {
            const auto& parents = candidates.parents[i];
            const std::size_t k = parents.size();
            if (k == 0) continue;
            // Log-factors depend only on alpha, so one pass serves the
            // gradient and every line-search trial.
            lf.resize(static_cast<std::size_t>(beta) * k);
            s_child.resize(beta);
            grad.assign(k, 0.0);
            for (int l = 0; l < beta; ++l) {
                s_child[l] = obs.at(l, i);
                double* row = lf.data() + static_cast<std::size_t>(l) * k;
                double log_pi = 0.0;
                for (std::size_t c = 0; c < k; ++c) {
                    const double f = 1.0 - obs.at(l, parents[c]) * state.alpha[i][c];
                    row[c] = std::log(std::max(f, kLogEps));
                    log_pi += state.x[i][c] * row[c];
                }
                const double pi = std::exp(log_pi);
                const double s = s_child[l];
                const double L = s * pi / std::max(1.0 - pi, kLogEps) - (1.0 - s);
                for (std::size_t c = 0; c < k; ++c) grad[c] -= row[c] * L;
            }
            const auto dir = project_direction(state.x[i], grad);
            if (std::all_of(dir.begin(), dir.end(), [](double d) { return d == 0.0; }))
                continue;
            const double bound = max_feasible_step(state.x[i], dir);
            ++trace.backtrack_calls;
            const std::vector<double> before = state.x[i];
            double f_new = 0.0;
            int halvings = 0;
            const bool ok = backtrack(
                state.x[i], dir, bound, node_obj[i],
                [&] { return detail::objective_from_log_factors(state.x[i], s_child, lf, beta); },
                &f_new, &halvings);
            if (!ok) {
                ++trace.null_updates;
                continue;
            }
            node_obj[i] = f_new;
            *stepped = true;
            *max_halvings_used = std::max(*max_halvings_used, halvings);
            record_variation(before, state.x[i], max_var);
        }
    };

    auto update_alpha = [&](int* max_halvings_used, double* max_var, bool* stepped) {
        for (int i = 0; i < n; ++i) {
            const auto& parents = candidates.parents[i];
            const std::size_t k = parents.size();
            if (k == 0) continue;
            grad_node(state, obs, candidates, i, nullptr, &grad);
            const auto dir = project_direction(state.alpha[i], grad);
            if (std::all_of(dir.begin(), dir.end(), [](double d) { return d == 0.0; }))
                continue;
            const double bound = max_feasible_step(state.alpha[i], dir);
            ++trace.backtrack_calls;
            sj.resize(static_cast<std::size_t>(beta) * k);
            s_child.resize(beta);
            for (int l = 0; l < beta; ++l) {
                s_child[l] = obs.at(l, i);
                for (std::size_t c = 0; c < k; ++c)
                    sj[static_cast<std::size_t>(l) * k + c] = obs.at(l, parents[c]);
            }
            const std::vector<double> before = state.alpha[i];
            double f_new = 0.0;
            int halvings = 0;
            const bool ok = backtrack(
                state.alpha[i], dir, bound, node_obj[i],
                [&] {
                    double total = 0.0;
                    for (int l = 0; l < beta; ++l) {
                        const double* row = sj.data() + static_cast<std::size_t>(l) * k;
                        double log_pi = 0.0;
                        for (std::size_t c = 0; c < k; ++c) {
                            const double x = state.x[i][c];
                            if (x == 0.0) continue;
                            const double f = 1.0 - row[c] * state.alpha[i][c];
                            log_pi += x * std::log(std::max(f, kLogEps));
                        }
                        const double s = s_child[l];
                        if (s > 0.0)
                            total += s * std::log(std::max(1.0 - std::exp(log_pi), kLogEps));
                        if (s < 1.0) total += (1.0 - s) * log_pi;
                    }
                    return total;
                },
                &f_new, &halvings);
            if (!ok) {
                ++trace.null_updates;
                continue;
            }
            node_obj[i] = f_new;
            *stepped = true;
            *max_halvings_used = std::max(*max_halvings_used, halvings);
            record_variation(before, state.alpha[i], max_var);
        }
    };

    auto total_objective = [&] {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += node_obj[i];
        return total;
    };

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        IterationRecord row;
        row.iter = iter;
        update_x(&row.m, &row.max_variation, &row.stepped_x);
        row.objective_x = total_objective();
        update_alpha(&row.k, &row.max_variation, &row.stepped_alpha);
        row.objective_alpha = total_objective();
        trace.rows.push_back(row);
        if (config.record_snapshots) trace.snapshots.push_back(state);
        if (row.max_variation < config.tol) break;
    }
    return result;
}

/// Structured text report of the trace, one row per outer iteration.
inline void write_trace(const IterationTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace: cannot open " + path);
    out << "iter\tobjective_x\tobjective_alpha\tm\tk\tmax_variation\n";
    char buf[96];
    for (const auto& r : trace.rows) {
        std::snprintf(buf, sizeof(buf), "%d\t%.10g\t%.10g\t%d\t%d\t%.10g\n", r.iter,
                      r.objective_x, r.objective_alpha, r.m, r.k, r.max_variation);
        out << buf;
    }
}

} // namespace pind

#endif
