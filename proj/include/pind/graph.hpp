#ifndef PIND_GRAPH_HPP
#define PIND_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pind/random.hpp"

namespace pind {

/// Directed graph over nodes 0..n-1 with optional per-edge propagation
/// weight in [0,1]. Immutable by convention once built.
class Graph {
public:
    using EdgeMap = std::map<std::pair<int, int>, std::optional<double>>;

    explicit Graph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("Graph: negative node count");
    }

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const EdgeMap& edges() const { return edges_; }

    void add_edge(int src, int dst, std::optional<double> weight = std::nullopt) {
        if (src == dst)
            throw std::invalid_argument("Graph: self-loop (" + std::to_string(src) + ")");
        if (src < 0 || src >= n_ || dst < 0 || dst >= n_)
            throw std::invalid_argument("Graph: node id out of range");
        if (weight && (*weight < 0.0 || *weight > 1.0))
            throw std::invalid_argument("Graph: weight outside [0,1]");
        edges_[{src, dst}] = weight;
    }

    bool has_edge(int src, int dst) const { return edges_.count({src, dst}) > 0; }

    std::optional<double> weight(int src, int dst) const {
        auto it = edges_.find({src, dst});
        if (it == edges_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_;
    EdgeMap edges_;
};

/// Uniform random directed graph with round(n * avg_degree) edges, no
/// self-loops, no duplicates. Stand-in for externally generated benchmark
/// graphs, which are loaded through the TSV format instead.
inline Graph generate_random_graph(int n, double avg_degree, std::uint64_t rng_seed) {
    if (n < 2) throw std::invalid_argument("generate_random_graph: n must be >= 2");
    if (avg_degree <= 0.0)
        throw std::invalid_argument("generate_random_graph: avg_degree must be > 0");
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1);
    const std::uint64_t m = static_cast<std::uint64_t>(std::llround(n * avg_degree));
    if (m > total)
        throw std::invalid_argument(
            "generate_random_graph: avg_degree too large, cannot place " +
            std::to_string(m) + " distinct edges among " + std::to_string(total));

    Graph g(n);
    Rng rng = make_rng(rng_seed);
    if (2 * m >= total) {
        // dense request: shuffle the full pair list
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(total);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) pairs.emplace_back(i, j);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (std::uint64_t e = 0; e < m; ++e) g.add_edge(pairs[e].first, pairs[e].second);
    } else {
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::unordered_set<std::uint64_t> seen;
        while (seen.size() < m) {
            int src = pick(rng);
            int dst = pick(rng);
            if (src == dst) continue;
            std::uint64_t key = static_cast<std::uint64_t>(src) * n + dst;
            if (seen.insert(key).second) g.add_edge(src, dst);
        }
    }
    return g;
}

namespace detail {

inline std::runtime_error parse_error(const std::string& path, std::size_t line_no,
                                      const std::string& what) {
    return std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

/// Graph TSV: optional "#n=<N>" header, then "<src>\t<dst>[\t<weight>]" per
/// line. Lines starting with '#' are comments.
inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_graph: cannot open " + path);

    struct Parsed {
        int src, dst;
        std::optional<double> w;
    };
    std::vector<Parsed> rows;
    std::optional<int> declared_n;
    int max_id = -1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#n=", 0) == 0) {
                try {
                    declared_n = std::stoi(line.substr(3));
                } catch (const std::exception&) {
                    throw detail::parse_error(path, line_no, "bad node-count header");
                }
            }
            continue;
        }
        auto fields = detail::split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3)
            throw detail::parse_error(path, line_no, "expected 2 or 3 tab-separated fields");
        Parsed p;
        try {
            p.src = std::stoi(fields[0]);
            p.dst = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw detail::parse_error(path, line_no, "bad node id");
        }
        if (p.src == p.dst)
            throw detail::parse_error(path, line_no, "self-loop at line " + std::to_string(line_no));
        if (p.src < 0 || p.dst < 0)
            throw detail::parse_error(path, line_no, "negative node id");
        if (fields.size() == 3) {
            try {
                p.w = std::stod(fields[2]);
            } catch (const std::exception&) {
                throw detail::parse_error(path, line_no, "bad weight");
            }
            if (*p.w < 0.0 || *p.w > 1.0)
                throw detail::parse_error(path, line_no, "weight outside [0,1]");
        }
        max_id = std::max({max_id, p.src, p.dst});
        rows.push_back(p);
    }
    int n = declared_n ? *declared_n : max_id + 1;
    if (max_id >= n)
        throw std::runtime_error(path + ": node id " + std::to_string(max_id) +
                                 " exceeds declared n=" + std::to_string(n));
    Graph g(n);
    for (const auto& p : rows) g.add_edge(p.src, p.dst, p.w);
    return g;
}

inline void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_graph: cannot open " + path);
    out << "#n=" << g.node_count() << "\n";
    for (const auto& [key, w] : g.edges()) {
        out << key.first << '\t' << key.second;
        if (w) out << '\t' << detail::format_double(*w);
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_graph: write failed for " + path);
}

} // namespace pind

#endif
