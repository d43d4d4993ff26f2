// Command-line front end: simulate, estimate, evaluate, score.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgm/csvio.hpp"
#include "sgm/errors.hpp"
#include "sgm/eval.hpp"
#include "sgm/graph.hpp"
#include "sgm/simgen.hpp"
#include "sgm/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int log_level() {
    const char* v = std::getenv("SGM_LOG");
    if (!v) return 0;
    const std::string s(v);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[sgm] " << msg << "\n";
}

double parse_auto(const std::string& s, const char* what) {
    if (s == "auto") return sgm::PipelineConfig::kAuto;
    try {
        const double v = std::stod(s);
        if (v > 0.0 || std::string(what) == "rho") return v;
    } catch (...) {
    }
    throw sgm::InvalidConfig(std::string(what) + " must be 'auto' or a number");
}

std::string node_name(const std::vector<std::string>& names, int idx) {
    if (idx < static_cast<int>(names.size()) && !names.empty()) return names[static_cast<std::size_t>(idx)];
    return std::to_string(idx + 1);
}

void write_scores_csv(const std::string& path, const sgm::EdgeScoreMatrix& scores,
                      const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw sgm::Error("cannot open " + path);
    out.precision(12);
    out << "i,j,score\n";
    for (int i = 1; i < scores.p; ++i) {
        for (int j = 0; j < i; ++j) {
            out << node_name(names, i) << ',' << node_name(names, j) << ','
                << scores.scores(i, j) << '\n';
        }
    }
}

void write_edges_csv(const std::string& path, const sgm::GraphEstimate& g,
                     const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw sgm::Error("cannot open " + path);
    out.precision(12);
    out << "i,j,score\n";
    for (const auto& [i, j] : g.edges) {
        out << node_name(names, i) << ',' << node_name(names, j) << ','
            << g.score_matrix.scores(i, j) << '\n';
    }
}

struct EstimateArgs {
    std::string data_path;
    std::string out_dir = ".";
    int d = 2;
    std::string method = "sgm";
    std::string rho = "auto";
    std::string eps = "auto";
    std::uint64_t seed = 1;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    std::string replay;
};

sgm::PipelineConfig make_config(const EstimateArgs& a) {
    sgm::PipelineConfig cfg;
    cfg.d = a.d;
    cfg.method = a.method == "naive" ? sgm::Method::Naive : sgm::Method::Sgm;
    cfg.workers = std::max(1, a.workers);
    cfg.rho = parse_auto(a.rho, "rho");
    const double eps = parse_auto(a.eps, "eps");
    cfg.eps_pair = cfg.eps_minus = cfg.eps_u = eps;
    return cfg;
}

int run_estimate(EstimateArgs a) {
    if (!a.replay.empty()) {
        std::ifstream in(a.replay);
        if (!in) throw sgm::Error("cannot open replay file " + a.replay);
        json snap = json::parse(in);
        a.data_path = snap.at("data").get<std::string>();
        a.d = snap.at("d").get<int>();
        a.method = snap.at("method").get<std::string>();
        a.seed = snap.at("seed").get<std::uint64_t>();
        a.workers = snap.at("workers").get<int>();
        // fixed selected values make the rerun bit-exact
        a.eps = "auto";
        a.rho = "auto";
        sgm::PipelineConfig cfg = make_config(a);
        cfg.eps_pair = snap.at("eps_pair").get<double>();
        cfg.eps_minus = snap.at("eps_minus").get<double>();
        cfg.eps_u = snap.at("eps_u").get<double>();
        cfg.rho = snap.at("rho").get<double>();
        const sgm::CsvTable table = sgm::ingest_csv(a.data_path);
        const sgm::GraphEstimate g = sgm::estimate(table.values, cfg);
        fs::create_directories(a.out_dir);
        write_edges_csv(a.out_dir + "/edges.csv", g, table.column_names);
        write_scores_csv(a.out_dir + "/scores.csv", g.score_matrix, table.column_names);
        std::cout << "replayed: " << g.edges.size() << " edges at rho=" << g.threshold << "\n";
        return 0;
    }

    const sgm::PipelineConfig cfg = make_config(a);
    log_info("ingesting " + a.data_path);
    const sgm::CsvTable table = sgm::ingest_csv(a.data_path);
    log_info("scoring " + std::to_string(table.values.cols()) + " nodes");
    const sgm::GraphEstimate g = sgm::estimate(table.values, cfg);

    fs::create_directories(a.out_dir);
    write_edges_csv(a.out_dir + "/edges.csv", g, table.column_names);
    write_scores_csv(a.out_dir + "/scores.csv", g.score_matrix, table.column_names);

    json snap;
    snap["version"] = sgm::kVersion;
    snap["data"] = a.data_path;
    snap["d"] = cfg.d;
    snap["method"] = a.method;
    snap["seed"] = a.seed;
    snap["workers"] = cfg.workers;
    snap["eps_pair"] = g.info.eps_pair;
    snap["eps_minus"] = g.info.eps_minus;
    snap["eps_u"] = g.info.eps_u;
    snap["rho"] = g.info.rho;
    snap["eps_fallback"] = g.info.eps_fallback;
    snap["rho_fallback"] = g.info.rho_fallback;
    snap["warnings"] = g.info.warnings;
    std::ofstream js(a.out_dir + "/run.json");
    if (!js) throw sgm::Error("cannot open run.json");
    js << snap.dump(2) << "\n";

    std::cout << "edges: " << g.edges.size() << "  rho: " << g.info.rho
              << "  eps: (" << g.info.eps_pair << ", " << g.info.eps_minus << ", "
              << g.info.eps_u << ")\n";
    for (const auto& w : g.info.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric graphical model estimation via sufficient dimension "
                 "reduction and conditional covariance operators"};
    app.set_version_flag("--version", sgm::kVersion);
    app.require_subcommand(1);

    // ---- simulate ----
    int model = 1, n = 100, p = 50, hubs = 5;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    auto* sim = app.add_subcommand("simulate", "Generate a simulated dataset and its truth");
    sim->add_option("--model", model, "model tag 1..5")->required();
    sim->add_option("--n", n, "sample size")->required();
    sim->add_option("--p", p, "node count (models 3/4)");
    sim->add_option("--hubs", hubs, "hub count (models 3/4)");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--out", out_dir, "output directory");

    // ---- estimate ----
    EstimateArgs est;
    auto* e = app.add_subcommand("estimate", "Estimate the graph from a CSV dataset");
    e->add_option("--data", est.data_path, "input CSV");
    e->add_option("--out", est.out_dir, "output directory");
    e->add_option("--d", est.d, "predictor dimension");
    e->add_option("--method", est.method, "sgm or naive")
        ->check(CLI::IsMember({"sgm", "naive"}));
    e->add_option("--rho", est.rho, "threshold: auto or a value");
    e->add_option("--eps", est.eps, "regularizers: auto or a fixed value");
    e->add_option("--seed", est.seed, "seed recorded in run.json");
    e->add_option("--workers", est.workers, "worker threads");
    e->add_option("--replay", est.replay, "replay a previous run.json");

    // ---- evaluate ----
    int reps = 10;
    std::vector<std::string> methods{"sgm", "naive"};
    int ev_d = 2;
    auto* ev = app.add_subcommand("evaluate", "Replicate a simulation and report ROC/AUC");
    ev->add_option("--model", model, "model tag 1..5")->required();
    ev->add_option("--n", n, "sample size")->required();
    ev->add_option("--p", p, "node count (models 3/4)");
    ev->add_option("--hubs", hubs, "hub count (models 3/4)");
    ev->add_option("--reps", reps, "replications");
    ev->add_option("--method", methods, "methods to compare");
    ev->add_option("--d", ev_d, "predictor dimension");
    ev->add_option("--seed", seed, "master seed");
    ev->add_option("--out", out_dir, "output directory");
    int ev_workers = static_cast<int>(std::thread::hardware_concurrency());
    ev->add_option("--workers", ev_workers, "worker threads");

    // ---- score ----
    std::string sc_data;
    int sc_i = 0, sc_j = 1;
    int sc_d = 2;
    std::string sc_method = "sgm";
    auto* sc = app.add_subcommand("score", "Diagnostics for a single pair");
    sc->add_option("--data", sc_data, "input CSV")->required();
    sc->add_option("--i", sc_i, "first node (1-based)")->required();
    sc->add_option("--j", sc_j, "second node (1-based)")->required();
    sc->add_option("--d", sc_d, "predictor dimension");
    sc->add_option("--method", sc_method, "sgm or naive")
        ->check(CLI::IsMember({"sgm", "naive"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            sgm::SimSpec spec{model, n, p, hubs};
            const sgm::Dataset ds = sgm::generate(spec, seed);
            fs::create_directories(out_dir);
            sgm::write_csv(out_dir + "/data.csv", ds.data);
            Eigen::MatrixXd truth(static_cast<Eigen::Index>(ds.truth.edges.size()), 2);
            for (std::size_t k = 0; k < ds.truth.edges.size(); ++k) {
                truth(static_cast<Eigen::Index>(k), 0) = ds.truth.edges[k].first + 1;
                truth(static_cast<Eigen::Index>(k), 1) = ds.truth.edges[k].second + 1;
            }
            sgm::write_csv(out_dir + "/truth.csv", truth, {"i", "j"});
            std::cout << "wrote " << ds.data.rows() << "x" << ds.data.cols() << " dataset, "
                      << ds.truth.edges.size() << " true edges\n";
        } else if (e->parsed()) {
            if (est.replay.empty() && est.data_path.empty()) {
                throw sgm::InvalidConfig("estimate requires --data or --replay");
            }
            return run_estimate(est);
        } else if (ev->parsed()) {
            sgm::SimSpec spec{model, n, p, hubs};
            std::vector<sgm::ReplicateSummary> summaries;
            for (const auto& m : methods) {
                sgm::PipelineConfig cfg;
                cfg.d = ev_d;
                cfg.method = m == "naive" ? sgm::Method::Naive : sgm::Method::Sgm;
                cfg.workers = std::max(1, ev_workers);
                log_info("evaluating method " + m);
                summaries.push_back(sgm::replicate(spec, reps, cfg, seed));
                std::cout << m << ": mean AUC " << summaries.back().mean_auc << " (sd "
                          << summaries.back().sd_auc << ")\n";
            }
            fs::create_directories(out_dir);
            sgm::write_auc_csv(out_dir + "/auc.csv", summaries, methods);
            sgm::write_roc_csv(out_dir + "/roc.csv", summaries, methods);
            sgm::write_roc_svg(out_dir + "/roc.svg", summaries, methods);
        } else if (sc->parsed()) {
            const sgm::CsvTable table = sgm::ingest_csv(sc_data);
            sgm::PairScoreConfig cfg;
            cfg.gsir.d = sc_d;
            const sgm::PairResult r = sgm::score_pair_detailed(
                table.values, sc_i - 1, sc_j - 1, cfg, sc_method == "naive");
            std::cout.precision(12);
            std::cout << "pair (" << sc_i << "," << sc_j << ") method " << sc_method << "\n"
                      << "gamma_minus " << r.gamma_minus << "\ngamma_pair " << r.gamma_pair
                      << "\ngamma_iu " << r.gamma_iu << "\ngamma_ju " << r.gamma_ju
                      << "\ngamma_u " << r.gamma_u << "\n";
            if (r.gsir_eigenvalues.size() > 0) {
                std::cout << "gsir eigenvalues";
                for (int k = 0; k < r.gsir_eigenvalues.size(); ++k) {
                    std::cout << ' ' << r.gsir_eigenvalues(k);
                }
                std::cout << "\n";
            }
            std::cout << "score " << r.score.value << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
