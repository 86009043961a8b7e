// Command-line front end: simulate -> infer -> eval -> bench over the
// TSV/CSV formats of the library.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pind/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

void add_config_flags(CLI::App* cmd, pind::RunConfig& cfg) {
    cmd->add_option("--n", cfg.n, "node count for the generated graph");
    cmd->add_option("--avg-degree", cfg.avg_degree, "average degree of the generated graph");
    cmd->add_option("--beta", cfg.beta, "number of diffusion processes");
    cmd->add_option("--seed-ratio", cfg.seed_ratio, "ratio of initially infected nodes");
    cmd->add_option("--alpha-mean", cfg.alpha_mean, "mean of true propagation weights");
    cmd->add_option("--alpha-std", cfg.alpha_std, "std of true propagation weights");
    cmd->add_option("--mu", cfg.mu, "mean of the observation uncertainty factor");
    cmd->add_option("--r", cfg.r, "sampling rounds for rounding x");
    cmd->add_option("--tol", cfg.tol, "convergence threshold on entry variation");
    cmd->add_option("--max-iter", cfg.max_iter, "outer iteration cap");
    cmd->add_option("--rng-seed", cfg.rng_seed, "master random seed");
    cmd->set_config("--config", "", "key=value config file; flags override");
}

void write_manifest(const std::string& path, const pind::RunConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& artifacts) {
    std::ofstream out(path);
    out << "n=" << cfg.n << "\n"
        << "avg_degree=" << cfg.avg_degree << "\n"
        << "beta=" << cfg.beta << "\n"
        << "seed_ratio=" << cfg.seed_ratio << "\n"
        << "alpha_mean=" << cfg.alpha_mean << "\n"
        << "alpha_std=" << cfg.alpha_std << "\n"
        << "mu=" << cfg.mu << "\n"
        << "r=" << cfg.r << "\n"
        << "tol=" << cfg.tol << "\n"
        << "max_iter=" << cfg.max_iter << "\n"
        << "rng_seed=" << cfg.rng_seed << "\n";
    for (const auto& [name, file] : artifacts)
        out << name << "=" << file << " checksum=" << file_checksum(file) << "\n";
}

int cmd_simulate(const pind::RunConfig& cfg, const std::string& graph_in,
                 const std::string& truth_out, const std::string& obs_out,
                 const std::string& manifest_out) {
    std::optional<pind::Graph> base;
    if (!graph_in.empty()) base = pind::load_graph(graph_in);
    pind::SimulationData data = pind::simulate(cfg, base);
    pind::save_graph(data.truth, truth_out);
    pind::write_observations(data.observations, obs_out);
    if (!manifest_out.empty())
        write_manifest(manifest_out, cfg, {{"truth", truth_out}, {"observations", obs_out}});
    std::cout << "simulate: n=" << data.truth.node_count() << " edges="
              << data.truth.edge_count() << " beta=" << data.observations.beta << "\n";
    return kExitOk;
}

// full alpha* over candidate pairs, graph_io TSV (weight = alpha)
void write_alpha_dump(const pind::CandidateMap& cands,
                      const std::vector<std::vector<double>>& alpha,
                      const std::string& path) {
    pind::Graph g(cands.n());
    for (int i = 0; i < cands.n(); ++i)
        for (std::size_t k = 0; k < cands.parents[i].size(); ++k)
            g.add_edge(cands.parents[i][k], i, alpha[i][k]);
    pind::save_graph(g, path);
}

int cmd_infer(const pind::RunConfig& cfg, const std::string& obs_in,
              const std::string& inferred_out, const std::string& trace_out,
              const std::string& alpha_out) {
    pind::ObservationMatrix obs = pind::read_observations(obs_in);
    pind::InferenceResult result = pind::infer(obs, cfg);
    if (result.prune.candidates.pair_count() == 0) {
        std::cerr << "infer: pruning removed every candidate pair (eta="
                  << result.prune.eta << ")\n";
        return kExitNumerical;
    }
    pind::save_graph(result.network.to_graph(result.prune.candidates), inferred_out);
    if (!trace_out.empty()) pind::write_trace(result.solve.trace, trace_out);
    if (!alpha_out.empty())
        write_alpha_dump(result.prune.candidates, result.network.alpha, alpha_out);
    std::cout << "infer: iterations=" << result.solve.trace.rows.size()
              << " objective=" << result.network.objective
              << " eta=" << result.prune.eta
              << " runtime_seconds=" << result.runtime_seconds << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& inferred_in, const std::string& truth_in,
             const std::string& alpha_in, const std::string& report_out) {
    pind::Graph inferred = pind::load_graph(inferred_in);
    pind::Graph truth = pind::load_graph(truth_in);
    pind::Scores s = pind::f_score(inferred, truth);

    // MAE from the full alpha dump when given, otherwise from the inferred
    // edges themselves (unselected pairs count as 0)
    const pind::Graph& alpha_src =
        alpha_in.empty() ? inferred : pind::load_graph(alpha_in);
    pind::CandidateMap cands;
    cands.parents.resize(alpha_src.node_count());
    std::vector<std::vector<double>> alpha(alpha_src.node_count());
    for (const auto& [key, w] : alpha_src.edges()) {
        cands.parents[key.second].push_back(key.first);
        alpha[key.second].push_back(w.value_or(0.0));
    }
    const double mae = pind::alpha_mae(cands, alpha, truth);

    std::ostringstream report;
    report << "precision=" << s.precision << "\n"
           << "recall=" << s.recall << "\n"
           << "f_score=" << s.f << "\n"
           << "alpha_mae=" << mae << "\n"
           << "inferred=" << inferred_in << "\n"
           << "truth=" << truth_in << "\n";
    if (report_out.empty()) {
        std::cout << report.str();
    } else {
        std::ofstream out(report_out);
        out << report.str();
        std::cout << "eval: f_score=" << s.f << " alpha_mae=" << mae << "\n";
    }
    return kExitOk;
}

int cmd_bench(const pind::RunConfig& base, const std::vector<double>& mu_grid,
              const std::vector<int>& beta_grid, int repeats,
              const std::string& table_out) {
    std::vector<double> mus = mu_grid.empty() ? std::vector<double>{base.mu} : mu_grid;
    std::vector<int> betas = beta_grid.empty() ? std::vector<int>{base.beta} : beta_grid;

    std::ostringstream table;
    table << "n\tavg_degree\tbeta\tmu\trepeats\tprecision\trecall\tf_score\talpha_mae\t"
             "iterations\truntime_seconds\tstatus\n";
    std::size_t grid_index = 0;
    for (double mu : mus)
        for (int beta : betas) {
            pind::RunConfig cfg = base;
            cfg.mu = mu;
            cfg.beta = beta;
            double p = 0, rec = 0, f = 0, mae = 0, runtime = 0;
            double iters = 0;
            int ok = 0;
            std::string status = "ok";
            for (int rep = 0; rep < repeats; ++rep) {
                cfg.rng_seed = pind::mix64(base.rng_seed) + grid_index * 1000 + rep;
                try {
                    pind::RunMetrics m = pind::run_once(cfg);
                    p += m.scores.precision;
                    rec += m.scores.recall;
                    f += m.scores.f;
                    mae += m.mae;
                    iters += m.iterations;
                    runtime += m.runtime_seconds;
                    ++ok;
                } catch (const std::exception& e) {
                    status = std::string("failed: ") + e.what();
                }
            }
            char row[512];
            if (ok > 0) {
                std::snprintf(row, sizeof(row),
                              "%d\t%g\t%d\t%g\t%d\t%.4f\t%.4f\t%.4f\t%.4f\t%.1f\t%.3f\t%s\n",
                              cfg.n, cfg.avg_degree, beta, mu, ok, p / ok, rec / ok, f / ok,
                              mae / ok, iters / ok, runtime / ok, status.c_str());
            } else {
                std::snprintf(row, sizeof(row), "%d\t%g\t%d\t%g\t0\t-\t-\t-\t-\t-\t-\t%s\n",
                              cfg.n, cfg.avg_degree, beta, mu, status.c_str());
            }
            table << row;
            ++grid_index;
        }
    if (table_out.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream out(table_out);
        out << table.str();
        std::cout << "bench: wrote " << table_out << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion network inference from probabilistic observations"};
    app.require_subcommand(1);

    pind::RunConfig cfg;

    auto* sim = app.add_subcommand("simulate", "generate truth network and observations");
    std::string graph_in, truth_out = "truth.tsv", obs_out = "observations.csv";
    std::string manifest_out = "manifest.txt";
    add_config_flags(sim, cfg);
    sim->add_option("--graph", graph_in, "load structure from TSV instead of generating");
    sim->add_option("--truth-out", truth_out, "weighted truth graph output (TSV)");
    sim->add_option("--obs-out", obs_out, "observation matrix output (CSV)");
    sim->add_option("--manifest-out", manifest_out, "run manifest output");

    auto* inf = app.add_subcommand("infer", "infer the network from observations");
    std::string obs_in = "observations.csv", inferred_out = "inferred.tsv";
    std::string trace_out = "trace.tsv", alpha_out = "alpha.tsv";
    add_config_flags(inf, cfg);
    inf->add_option("--obs", obs_in, "observation matrix input (CSV)");
    inf->add_option("--inferred-out", inferred_out, "inferred network output (TSV)");
    inf->add_option("--trace-out", trace_out, "iteration trace output");
    inf->add_option("--alpha-out", alpha_out, "full alpha dump over candidate pairs (TSV)");

    auto* ev = app.add_subcommand("eval", "score an inferred network against truth");
    std::string eval_inferred, eval_truth, eval_alpha, report_out;
    ev->add_option("--inferred", eval_inferred, "inferred network (TSV)")->required();
    ev->add_option("--truth", eval_truth, "ground-truth network (TSV)")->required();
    ev->add_option("--alpha", eval_alpha, "full alpha dump for MAE (TSV)");
    ev->add_option("--report-out", report_out, "metrics report output (default stdout)");

    auto* bench = app.add_subcommand("bench", "sweep a config grid and tabulate metrics");
    std::vector<double> mu_grid;
    std::vector<int> beta_grid;
    int repeats = 10;
    std::string table_out;
    add_config_flags(bench, cfg);
    bench->add_option("--mu-grid", mu_grid, "list of mu values to sweep");
    bench->add_option("--beta-grid", beta_grid, "list of beta values to sweep");
    bench->add_option("--repeats", repeats, "repetitions averaged per grid point");
    bench->add_option("--table-out", table_out, "aggregate table output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(cfg, graph_in, truth_out, obs_out, manifest_out);
        if (inf->parsed())
            return cmd_infer(cfg, obs_in, inferred_out, trace_out, alpha_out);
        if (ev->parsed()) return cmd_eval(eval_inferred, eval_truth, eval_alpha, report_out);
        if (bench->parsed()) return cmd_bench(cfg, mu_grid, beta_grid, repeats, table_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
