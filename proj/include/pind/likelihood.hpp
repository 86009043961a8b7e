#ifndef PIND_LIKELIHOOD_HPP
#define PIND_LIKELIHOOD_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pind/cascade.hpp"
#include "pind/mutual_info.hpp"

namespace pind {

/// Floor for every log / denominator argument, keeping the objective and
/// its gradients finite over the whole box.
inline constexpr double kLogEps = 1e-12;

/// Relaxed variables over the candidate pairs: x[i][k] and alpha[i][k] are
/// the edge-existence probability and propagation probability for the pair
/// (parents[i][k] -> i). Layout mirrors the CandidateMap exactly.
struct RelaxedState {
    std::vector<std::vector<double>> x;
    std::vector<std::vector<double>> alpha;

    static RelaxedState filled(const CandidateMap& candidates, double x0, double alpha0) {
        if (x0 < 0.0 || x0 > 1.0 || alpha0 < 0.0 || alpha0 > 1.0)
            throw std::invalid_argument("RelaxedState: initializer outside [0,1]");
        RelaxedState s;
        s.x.resize(candidates.n());
        s.alpha.resize(candidates.n());
        for (int i = 0; i < candidates.n(); ++i) {
            s.x[i].assign(candidates.parents[i].size(), x0);
            s.alpha[i].assign(candidates.parents[i].size(), alpha0);
        }
        return s;
    }
};

using GradMap = std::vector<std::vector<double>>;

/// Survival product Pi_i^l = prod_{k in C_i} (1 - s_k^l a_ki)^{x_ki},
/// evaluated in log space.
inline double survival_product(const RelaxedState& state, const ObservationMatrix& obs,
                               const CandidateMap& candidates, int i, int l) {
    const auto& parents = candidates.parents[i];
    double log_pi = 0.0;
    for (std::size_t k = 0; k < parents.size(); ++k) {
        const double x = state.x[i][k];
        if (x == 0.0) continue;
        const double f = 1.0 - obs.at(l, parents[k]) * state.alpha[i][k];
        log_pi += x * std::log(std::max(f, kLogEps));
    }
    return std::exp(log_pi);
}

/// L_i^l = s_i^l Pi / (1 - Pi) - (1 - s_i^l), with the denominator floored.
inline double node_process_factor(const RelaxedState& state, const ObservationMatrix& obs,
                                  const CandidateMap& candidates, int i, int l) {
    const double s = obs.at(l, i);
    const double pi = survival_product(state, obs, candidates, i, l);
    return s * pi / std::max(1.0 - pi, kLogEps) - (1.0 - s);
}

/// Node i's share of the relaxed log-likelihood, summed over processes.
/// Terms with an exactly-zero coefficient contribute 0 even where the log
/// argument is clamped. Nodes with empty candidate sets contribute 0 (they
/// carry no variables).
inline double objective_node(const RelaxedState& state, const ObservationMatrix& obs,
                             const CandidateMap& candidates, int i) {
    const auto& parents = candidates.parents[i];
    if (parents.empty()) return 0.0;
    double total = 0.0;
    for (int l = 0; l < obs.beta; ++l) {
        const double s = obs.at(l, i);
        double log_pi = 0.0;
        double miss_term = 0.0;
        for (std::size_t k = 0; k < parents.size(); ++k) {
            const double x = state.x[i][k];
            if (x == 0.0) continue;
            const double f = 1.0 - obs.at(l, parents[k]) * state.alpha[i][k];
            const double log_f = std::log(std::max(f, kLogEps));
            log_pi += x * log_f;
            miss_term += x * log_f;
        }
        if (s > 0.0) total += s * std::log(std::max(1.0 - std::exp(log_pi), kLogEps));
        if (s < 1.0) total += (1.0 - s) * miss_term;
    }
    return total;
}

/// Full relaxed objective; decomposes exactly as a sum over child nodes.
inline double objective(const RelaxedState& state, const ObservationMatrix& obs,
                        const CandidateMap& candidates) {
    double total = 0.0;
    for (int i = 0; i < candidates.n(); ++i)
        total += objective_node(state, obs, candidates, i);
    return total;
}

/// d L / d x_ji and d L / d alpha_ji restricted to node i's pairs. Shared
/// per-process work (survival product, L_i^l) is computed once.
inline void grad_node(const RelaxedState& state, const ObservationMatrix& obs,
                      const CandidateMap& candidates, int i, std::vector<double>* gx,
                      std::vector<double>* galpha) {
    const auto& parents = candidates.parents[i];
    if (gx) gx->assign(parents.size(), 0.0);
    if (galpha) galpha->assign(parents.size(), 0.0);
    if (parents.empty()) return;

    std::vector<double> log_f(parents.size());
    for (int l = 0; l < obs.beta; ++l) {
        double log_pi = 0.0;
        for (std::size_t k = 0; k < parents.size(); ++k) {
            const double f = 1.0 - obs.at(l, parents[k]) * state.alpha[i][k];
            log_f[k] = std::log(std::max(f, kLogEps));
            log_pi += state.x[i][k] * log_f[k];
        }
        const double pi = std::exp(log_pi);
        const double s = obs.at(l, i);
        const double L = s * pi / std::max(1.0 - pi, kLogEps) - (1.0 - s);
        for (std::size_t k = 0; k < parents.size(); ++k) {
            if (gx) (*gx)[k] -= log_f[k] * L;
            if (galpha) {
                const double x = state.x[i][k];
                if (x != 0.0) {
                    const double sj = obs.at(l, parents[k]);
                    const double denom = std::max(1.0 - sj * state.alpha[i][k], kLogEps);
                    (*galpha)[k] += x * sj / denom * L;
                }
            }
        }
    }
}

inline GradMap grad_x(const RelaxedState& state, const ObservationMatrix& obs,
                      const CandidateMap& candidates) {
    GradMap g(candidates.n());
    for (int i = 0; i < candidates.n(); ++i) grad_node(state, obs, candidates, i, &g[i], nullptr);
    return g;
}

inline GradMap grad_alpha(const RelaxedState& state, const ObservationMatrix& obs,
                          const CandidateMap& candidates) {
    GradMap g(candidates.n());
    for (int i = 0; i < candidates.n(); ++i) grad_node(state, obs, candidates, i, nullptr, &g[i]);
    return g;
}

} // namespace pind

#endif
