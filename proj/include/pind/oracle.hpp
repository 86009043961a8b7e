#ifndef PIND_ORACLE_HPP
#define PIND_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pind/likelihood.hpp"
#include "pind/rounding.hpp"
#include "pind/solver.hpp"

namespace pind {

/// Central finite differences of the full objective, entry by entry.
/// Verification-only path: shares nothing with the analytic gradients
/// beyond objective evaluation. Evaluation points must sit further than h
/// from the box boundary.
inline GradMap finite_diff_gradient(const RelaxedState& state, const ObservationMatrix& obs,
                                    const CandidateMap& candidates, Block block, double h) {
    if (h <= 0.0) throw std::invalid_argument("finite_diff_gradient: h must be > 0");
    RelaxedState work = state;
    GradMap g(candidates.n());
    for (int i = 0; i < candidates.n(); ++i) {
        auto& vars = block == Block::x ? work.x[i] : work.alpha[i];
        g[i].resize(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const double v = vars[k];
            if (v <= h || v >= 1.0 - h)
                throw std::invalid_argument("finite_diff_gradient: point too close to boundary");
            vars[k] = v + h;
            const double up = objective(work, obs, candidates);
            vars[k] = v - h;
            const double down = objective(work, obs, candidates);
            vars[k] = v;
            g[i][k] = (up - down) / (2.0 * h);
        }
    }
    return g;
}

/// Brute-force maximizer of the objective over all binary x assignments at
/// fixed alpha. Enumeration order is lexicographic over the flattened pair
/// list (node id, then candidate index); first-found tie-break.
inline BinaryAssignment exhaustive_binary_optimum(
    const ObservationMatrix& obs, const CandidateMap& candidates,
    const std::vector<std::vector<double>>& alpha_fixed, double* best_value = nullptr) {
    const std::size_t pairs = candidates.pair_count();
    if (pairs > 20)
        throw std::invalid_argument("exhaustive_binary_optimum: more than 20 candidate pairs");

    BinaryAssignment assignment(candidates.n());
    for (int i = 0; i < candidates.n(); ++i)
        assignment[i].assign(candidates.parents[i].size(), 0);

    BinaryAssignment best = assignment;
    double best_obj = binary_objective(assignment, alpha_fixed, obs, candidates);
    const std::uint64_t count = 1ULL << pairs;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        std::size_t bit = 0;
        for (int i = 0; i < candidates.n(); ++i)
            for (std::size_t k = 0; k < assignment[i].size(); ++k, ++bit)
                assignment[i][k] = (mask >> bit) & 1U;
        const double obj = binary_objective(assignment, alpha_fixed, obs, candidates);
        if (obj > best_obj) {
            best_obj = obj;
            best = assignment;
        }
    }
    if (best_value) *best_value = best_obj;
    return best;
}

} // namespace pind

#endif
