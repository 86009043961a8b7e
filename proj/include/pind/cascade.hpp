#ifndef PIND_CASCADE_HPP
#define PIND_CASCADE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pind/graph.hpp"
#include "pind/random.hpp"

namespace pind {

/// beta x n matrix of infection probabilities, row per diffusion process.
struct ObservationMatrix {
    int beta = 0;
    int n = 0;
    std::vector<double> values; // row-major, beta rows of n

    ObservationMatrix() = default;
    ObservationMatrix(int beta_, int n_)
        : beta(beta_), n(n_), values(static_cast<std::size_t>(beta_) * n_, 0.0) {}

    double& at(int process, int node) {
        return values[static_cast<std::size_t>(process) * n + node];
    }
    double at(int process, int node) const {
        return values[static_cast<std::size_t>(process) * n + node];
    }
};

struct SeedSet {
    std::vector<std::vector<int>> processes; // sorted node ids per process
};

/// Independent Normal(mean, std) draw per edge, clamped into [0.01, 0.99]
/// so no edge is ever certain or impossible.
inline Graph sample_propagation_weights(const Graph& graph, double mean, double std_dev,
                                        std::uint64_t rng_seed) {
    if (graph.edge_count() == 0)
        throw std::invalid_argument("sample_propagation_weights: graph has no edges");
    if (mean <= 0.0 || mean >= 1.0)
        throw std::invalid_argument("sample_propagation_weights: mean must be in (0,1)");
    if (std_dev < 0.0)
        throw std::invalid_argument("sample_propagation_weights: std must be >= 0");

    Graph out(graph.node_count());
    Rng rng = make_rng(rng_seed);
    std::normal_distribution<double> normal(mean, std_dev > 0.0 ? std_dev : 1.0);
    for (const auto& [key, w] : graph.edges()) {
        double draw = std_dev > 0.0 ? normal(rng) : mean;
        out.add_edge(key.first, key.second, std::clamp(draw, 0.01, 0.99));
    }
    return out;
}

inline int seed_count(int n, double ratio) {
    return std::max(1, static_cast<int>(std::floor(n * ratio + 0.5)));
}

/// Per process, seed_count(n, ratio) distinct nodes drawn uniformly;
/// processes use independent streams derived from (rng_seed, process).
inline SeedSet select_seeds(int n, double ratio, int beta, std::uint64_t rng_seed) {
    if (n < 1) throw std::invalid_argument("select_seeds: n must be >= 1");
    if (ratio <= 0.0 || ratio >= 1.0)
        throw std::invalid_argument("select_seeds: ratio must be in (0,1)");
    const int k = seed_count(n, ratio);
    SeedSet seeds;
    seeds.processes.resize(beta);
    for (int l = 0; l < beta; ++l) {
        Rng rng = make_rng(rng_seed, static_cast<std::uint64_t>(l));
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i;
        // partial Fisher-Yates, first k entries
        std::uniform_int_distribution<int> pick;
        for (int i = 0; i < k; ++i) {
            int j = std::uniform_int_distribution<int>(i, n - 1)(rng);
            std::swap(ids[i], ids[j]);
        }
        ids.resize(k);
        std::sort(ids.begin(), ids.end());
        seeds.processes[l] = std::move(ids);
    }
    return seeds;
}

/// IC-model cascade with a caller-supplied transmission predicate:
/// attempt(parent, child) decides each (single) infection attempt. Rounds
/// repeat until no new infection. Returns 0/1 status per node.
inline std::vector<std::uint8_t> run_ic_cascade(
    const Graph& graph, const std::vector<int>& seeds,
    const std::function<bool(int, int)>& attempt) {
    const int n = graph.node_count();
    std::vector<std::uint8_t> infected(n, 0);
    std::vector<std::vector<std::pair<int, double>>> children(n);
    for (const auto& [key, w] : graph.edges()) {
        if (!w) throw std::invalid_argument("run_ic_cascade: unweighted edge");
        children[key.first].emplace_back(key.second, *w);
    }
    std::vector<int> frontier;
    for (int s : seeds) {
        if (s < 0 || s >= n) throw std::invalid_argument("run_ic_cascade: bad seed id");
        if (!infected[s]) {
            infected[s] = 1;
            frontier.push_back(s);
        }
    }
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier)
            for (const auto& [v, w] : children[u])
                if (!infected[v] && attempt(u, v)) {
                    infected[v] = 1;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    return infected;
}

inline std::vector<std::uint8_t> run_ic_cascade(const Graph& graph,
                                                const std::vector<int>& seeds, Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    return run_ic_cascade(graph, seeds, [&](int u, int v) {
        return uni(rng) < *graph.weight(u, v);
    });
}

/// beta cascades on a weighted graph; process l draws from stream
/// (rng_seed, l) so results are independent of evaluation order.
inline ObservationMatrix simulate_binary(const Graph& weighted_graph, const SeedSet& seeds,
                                         std::uint64_t rng_seed) {
    const int beta = static_cast<int>(seeds.processes.size());
    ObservationMatrix obs(beta, weighted_graph.node_count());
    for (int l = 0; l < beta; ++l) {
        Rng rng = make_rng(rng_seed, static_cast<std::uint64_t>(l));
        auto status = run_ic_cascade(weighted_graph, seeds.processes[l], rng);
        for (int i = 0; i < obs.n; ++i) obs.at(l, i) = status[i];
    }
    return obs;
}

/// Replace each exact status s by clamp(|s - u|, 0, 1), u ~ Normal(mu, 0.1)
/// drawn per entry. mu = 0 degenerates to the identity (exact data).
inline ObservationMatrix inject_uncertainty(const ObservationMatrix& binary, double mu,
                                            std::uint64_t rng_seed) {
    if (mu < 0.0) throw std::invalid_argument("inject_uncertainty: mu must be >= 0");
    for (double v : binary.values)
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("inject_uncertainty: input must be binary");
    if (mu == 0.0) return binary;

    ObservationMatrix out = binary;
    Rng rng = make_rng(rng_seed);
    std::normal_distribution<double> normal(mu, 0.1);
    for (double& v : out.values) {
        double u = normal(rng);
        v = std::clamp(std::fabs(v - u), 0.0, 1.0);
    }
    return out;
}

/// Observations CSV: header "beta=<B>,n=<N>", then B rows of N
/// comma-separated values at 6 decimal places.
inline void write_observations(const ObservationMatrix& obs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_observations: cannot open " + path);
    out << "beta=" << obs.beta << ",n=" << obs.n << "\n";
    char buf[16];
    for (int l = 0; l < obs.beta; ++l) {
        for (int i = 0; i < obs.n; ++i) {
            std::snprintf(buf, sizeof(buf), "%.6f", obs.at(l, i));
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_observations: write failed for " + path);
}

inline ObservationMatrix read_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_observations: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int beta = 0, n = 0;
    if (std::sscanf(line.c_str(), "beta=%d,n=%d", &beta, &n) != 2 || beta < 0 || n < 0)
        throw std::runtime_error(path + ": bad header '" + line + "'");
    ObservationMatrix obs(beta, n);
    for (int l = 0; l < beta; ++l) {
        if (!std::getline(in, line))
            throw std::runtime_error(path + ": expected " + std::to_string(beta) +
                                     " data rows, got " + std::to_string(l));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::stringstream ss(line);
        std::string cell;
        int i = 0;
        while (std::getline(ss, cell, ',')) {
            if (i >= n)
                throw std::runtime_error(path + ": row " + std::to_string(l + 1) +
                                         " has more than " + std::to_string(n) + " values");
            double v;
            try {
                std::size_t used = 0;
                v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ": row " + std::to_string(l + 1) +
                                         ": non-numeric cell '" + cell + "'");
            }
            if (v < 0.0 || v > 1.0)
                throw std::runtime_error(path + ": row " + std::to_string(l + 1) +
                                         ": value outside [0,1]");
            obs.at(l, i++) = v;
        }
        if (i != n)
            throw std::runtime_error(path + ": row " + std::to_string(l + 1) + " has " +
                                     std::to_string(i) + " values, expected " +
                                     std::to_string(n));
    }
    return obs;
}

} // namespace pind

#endif
