#ifndef PIND_ROUNDING_HPP
#define PIND_ROUNDING_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pind/graph.hpp"
#include "pind/likelihood.hpp"
#include "pind/random.hpp"

namespace pind {

using BinaryAssignment = std::vector<std::vector<std::uint8_t>>;

/// Integral edge decision with the alpha values learned alongside it.
struct InferredNetwork {
    BinaryAssignment x_hat;                 // per candidate pair, 0/1
    std::vector<std::vector<double>> alpha; // full alpha* over candidate pairs
    double objective = 0.0;

    /// Selected edges as a Graph, weight = learned alpha.
    Graph to_graph(const CandidateMap& candidates) const {
        Graph g(candidates.n());
        for (int i = 0; i < candidates.n(); ++i)
            for (std::size_t k = 0; k < candidates.parents[i].size(); ++k)
                if (x_hat[i][k]) g.add_edge(candidates.parents[i][k], i, alpha[i][k]);
        return g;
    }
};

/// One Bernoulli draw per pair: entry 1 with probability x*_ji.
inline BinaryAssignment sample_binary(const std::vector<std::vector<double>>& x_star,
                                      Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    BinaryAssignment sample(x_star.size());
    for (std::size_t i = 0; i < x_star.size(); ++i) {
        sample[i].resize(x_star[i].size());
        for (std::size_t k = 0; k < x_star[i].size(); ++k)
            sample[i][k] = uni(rng) < x_star[i][k] ? 1 : 0;
    }
    return sample;
}

inline double binary_objective(const BinaryAssignment& x_hat,
                               const std::vector<std::vector<double>>& alpha_star,
                               const ObservationMatrix& obs,
                               const CandidateMap& candidates) {
    RelaxedState s;
    s.alpha = alpha_star;
    s.x.resize(x_hat.size());
    for (std::size_t i = 0; i < x_hat.size(); ++i)
        s.x[i].assign(x_hat[i].begin(), x_hat[i].end());
    return objective(s, obs, candidates);
}

/// Draw r binary samples from x*, score each with L(., alpha*), keep the
/// earliest sample attaining the maximum. Sample t uses the derived stream
/// (rng_seed, t).
inline InferredNetwork select_best_sample(const std::vector<std::vector<double>>& x_star,
                                          const std::vector<std::vector<double>>& alpha_star,
                                          const ObservationMatrix& obs,
                                          const CandidateMap& candidates, int r,
                                          std::uint64_t rng_seed) {
    if (r < 1) throw std::invalid_argument("select_best_sample: r must be >= 1");
    InferredNetwork best;
    bool have_best = false;
    for (int t = 0; t < r; ++t) {
        Rng rng = make_rng(rng_seed, static_cast<std::uint64_t>(t));
        BinaryAssignment sample = sample_binary(x_star, rng);
        const double value = binary_objective(sample, alpha_star, obs, candidates);
        if (!have_best || value > best.objective) {
            best.x_hat = std::move(sample);
            best.objective = value;
            have_best = true;
        }
    }
    best.alpha = alpha_star;
    return best;
}

} // namespace pind

#endif
