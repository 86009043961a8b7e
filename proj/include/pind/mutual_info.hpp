#ifndef PIND_MUTUAL_INFO_HPP
#define PIND_MUTUAL_INFO_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pind/cascade.hpp"

namespace pind {

/// Symmetric n x n mutual-information matrix; diagonal unused (0).
struct MiMatrix {
    int n = 0;
    std::vector<double> values;

    explicit MiMatrix(int n_ = 0) : n(n_), values(static_cast<std::size_t>(n_) * n_, 0.0) {}
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
};

/// Per node i, the pruned candidate parent set C_i (sorted node ids).
struct CandidateMap {
    std::vector<std::vector<int>> parents;

    int n() const { return static_cast<int>(parents.size()); }
    std::size_t pair_count() const {
        std::size_t c = 0;
        for (const auto& p : parents) c += p.size();
        return c;
    }
    static CandidateMap complete(int n) {
        CandidateMap m;
        m.parents.resize(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (j != i) m.parents[i].push_back(j);
        return m;
    }
};

/// Mutual information of infection statuses X_i, X_j under the per-process
/// marginals p(X_i^l = 1) = s_i^l, pooled uniformly over processes with a
/// product joint per process. Natural log; 0 ln 0 = 0.
inline double mutual_information(const ObservationMatrix& obs, int i, int j) {
    if (i == j) throw std::invalid_argument("mutual_information: i == j");
    if (obs.beta < 1) throw std::invalid_argument("mutual_information: beta must be >= 1");
    double p1i = 0.0, p1j = 0.0, p11 = 0.0;
    for (int l = 0; l < obs.beta; ++l) {
        const double si = obs.at(l, i);
        const double sj = obs.at(l, j);
        p1i += si;
        p1j += sj;
        p11 += si * sj;
    }
    p1i /= obs.beta;
    p1j /= obs.beta;
    p11 /= obs.beta;
    const double p10 = p1i - p11;
    const double p01 = p1j - p11;
    const double p00 = 1.0 - p1i - p1j + p11;

    auto term = [](double pab, double pa, double pb) {
        if (pab <= 0.0) return 0.0;
        return pab * std::log(pab / (pa * pb));
    };
    return term(p00, 1.0 - p1i, 1.0 - p1j) + term(p01, 1.0 - p1i, p1j) +
           term(p10, p1i, 1.0 - p1j) + term(p11, p1i, p1j);
}

/// 1-D 2-means with one mean pinned at 0; the other initialized to
/// max(values). Returns the largest value in the zero cluster (0 if that
/// cluster is empty). Ties in assignment go to the nonzero cluster.
inline double two_means_threshold(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("two_means_threshold: empty input");
    for (double v : values)
        if (v < -1e-12) throw std::invalid_argument("two_means_threshold: negative value");

    double mean1 = *std::max_element(values.begin(), values.end());
    std::vector<std::uint8_t> in_cluster1(values.size(), 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        double sum1 = 0.0;
        std::size_t count1 = 0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const double v = values[k];
            std::uint8_t c1 = std::fabs(v - mean1) <= std::fabs(v) ? 1 : 0;
            if (c1 != in_cluster1[k]) changed = true;
            in_cluster1[k] = c1;
            if (c1) {
                sum1 += v;
                ++count1;
            }
        }
        if (count1 > 0) mean1 = sum1 / count1;
        if (!changed) break;
    }
    double eta = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!in_cluster1[k]) eta = std::max(eta, values[k]);
    return eta;
}

struct PruneResult {
    CandidateMap candidates;
    double eta = 0.0;
    MiMatrix mi;
};

/// MI for all unordered pairs, one global threshold from the modified
/// 2-means, keep v_j in C_i exactly when MI(X_i, X_j) > eta. Retention is
/// symmetric by construction.
inline PruneResult build_candidate_sets(const ObservationMatrix& obs) {
    if (obs.n < 2) throw std::invalid_argument("build_candidate_sets: n must be >= 2");
    PruneResult result;
    result.mi = MiMatrix(obs.n);
    std::vector<double> pool;
    pool.reserve(static_cast<std::size_t>(obs.n) * (obs.n - 1) / 2);
    for (int i = 0; i < obs.n; ++i)
        for (int j = i + 1; j < obs.n; ++j) {
            double mi = mutual_information(obs, i, j);
            if (mi < 0.0) mi = std::max(mi, 0.0); // rounding noise only
            result.mi.at(i, j) = mi;
            result.mi.at(j, i) = mi;
            pool.push_back(mi);
        }
    result.eta = two_means_threshold(pool);
    result.candidates.parents.resize(obs.n);
    for (int i = 0; i < obs.n; ++i)
        for (int j = 0; j < obs.n; ++j)
            if (j != i && result.mi.at(i, j) > result.eta)
                result.candidates.parents[i].push_back(j);
    return result;
}

/// Diagnostic dump: eta on the first line, then the MI matrix as CSV.
inline void write_mi_csv(const MiMatrix& mi, double eta, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_mi_csv: cannot open " + path);
    out << "eta=" << detail::format_double(eta) << ",n=" << mi.n << "\n";
    char buf[16];
    for (int i = 0; i < mi.n; ++i) {
        for (int j = 0; j < mi.n; ++j) {
            std::snprintf(buf, sizeof(buf), "%.6f", mi.at(i, j));
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
}

} // namespace pind

#endif
