#include "sgm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgm/errors.hpp"
#include "sgm/parallel.hpp"

namespace sgm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::pair<int, int>> all_pairs(int p) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
    for (int i = 1; i < p; ++i) {
        for (int j = 0; j < i; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
}

bool is_pair_failure(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const DegenerateSample&) {
        return true;
    } catch (const RankDeficient&) {
        return true;
    } catch (const NearSingular&) {
        return true;
    } catch (const NotPsd&) {
        return true;
    } catch (...) {
        return false;
    }
}

struct PairGrams {
    GramMatrix minus;
    GramMatrix pair;
};

PairGrams pair_grams(const Eigen::MatrixXd& data, int i, int j) {
    const int p = static_cast<int>(data.cols());
    const Eigen::MatrixXd x_minus = block_rows(data, VariableBlock::complement(i, j, p));
    const Eigen::MatrixXd x_pair = block_rows(data, VariableBlock::pair(j, i));
    return {gram(x_minus, {gamma_heuristic(x_minus)}), gram(x_pair, {gamma_heuristic(x_pair)})};
}

Eigen::MatrixXd predictor_values(const Eigen::MatrixXd& data, int i, int j,
                                 const PairGrams& grams, const PipelineConfig& cfg,
                                 double eps_minus, double eps_pair) {
    if (cfg.method == Method::Naive) {
        const int p = static_cast<int>(data.cols());
        return block_rows(data, VariableBlock::complement(i, j, p));
    }
    GsirConfig gcfg{cfg.d, eps_minus, eps_pair};
    if (cfg.eps_relative) {
        gcfg.eps_minus *= lambda_max(grams.minus.centered);
        gcfg.eps_pair *= lambda_max(grams.pair.centered);
    }
    return extract_predictor(grams.minus, grams.pair, gcfg, {i, j}).values;
}

} // namespace

void EdgeScoreMatrix::validate() const {
    if (p < 1 || scores.rows() != p || scores.cols() != p) {
        throw InvalidInput("EdgeScoreMatrix: shape mismatch");
    }
    if (!scores.allFinite()) {
        throw InvalidInput("EdgeScoreMatrix: non-finite score");
    }
    if ((scores - scores.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw InvalidInput("EdgeScoreMatrix: not symmetric");
    }
    if (scores.diagonal().cwiseAbs().maxCoeff() > 0.0) {
        throw InvalidInput("EdgeScoreMatrix: nonzero diagonal");
    }
    if (scores.minCoeff() < 0.0) {
        throw InvalidInput("EdgeScoreMatrix: negative score");
    }
}

void PipelineConfig::validate() const {
    grid.validate();
    if (d < 1) throw InvalidConfig("d must be positive");
    if (workers < 1) throw InvalidConfig("workers must be >= 1");
    if (!(fallback_eps > 0.0)) throw InvalidConfig("fallback_eps must be positive");
    for (double e : {eps_pair, eps_minus, eps_u}) {
        if (e != kAuto && !(e > 0.0)) {
            throw InvalidConfig("regularizers must be positive or auto");
        }
    }
}

EdgeScoreMatrix score_all_pairs(const Eigen::MatrixXd& data, const PipelineConfig& cfg,
                                RunInfo* info) {
    cfg.validate();
    const auto n = data.rows();
    const int p = static_cast<int>(data.cols());
    if (p < 3) throw InvalidInput("score_all_pairs requires p >= 3");
    if (n < 4) throw InvalidInput("score_all_pairs requires n >= 4");
    if (!data.allFinite()) throw InvalidInput("score_all_pairs: non-finite data");

    const auto pairs = all_pairs(p);
    const int ntasks = static_cast<int>(pairs.size());
    RunInfo local;
    RunInfo& run = info ? *info : local;

    const bool need_step1_gcv =
        (cfg.eps_pair == PipelineConfig::kAuto || cfg.eps_minus == PipelineConfig::kAuto) &&
        cfg.method == Method::Sgm;
    double eps_pair = cfg.eps_pair == PipelineConfig::kAuto ? cfg.fallback_eps : cfg.eps_pair;
    double eps_minus = cfg.eps_minus == PipelineConfig::kAuto ? cfg.fallback_eps : cfg.eps_minus;

    const auto& eps_grid = cfg.grid.eps_values;
    const Eigen::Index ng = static_cast<Eigen::Index>(eps_grid.size());

    // Phase A: step-1 epsilons. Per-pair curves land in fixed slots and are
    // reduced sequentially, so the result is schedule-independent.
    if (need_step1_gcv) {
        Eigen::MatrixXd curve_pair = Eigen::MatrixXd::Zero(ng, ntasks);
        Eigen::MatrixXd curve_minus = Eigen::MatrixXd::Zero(ng, ntasks);
        Eigen::VectorXd ok = Eigen::VectorXd::Zero(ntasks);
        parallel_for(ntasks, cfg.workers, [&](int k) {
            const auto [i, j] = pairs[static_cast<std::size_t>(k)];
            try {
                const PairGrams g = pair_grams(data, i, j);
                curve_pair.col(k) = gcv_eps_curve(g.minus.centered, g.pair.centered, eps_grid);
                curve_minus.col(k) = gcv_eps_curve(g.pair.centered, g.minus.centered, eps_grid);
                ok(k) = 1.0;
            } catch (const DegenerateSample&) {
            }
        });
        if (ok.sum() > 0.0) {
            try {
                if (cfg.eps_pair == PipelineConfig::kAuto) {
                    eps_pair = pick_eps(curve_pair.rowwise().sum(), eps_grid);
                }
                if (cfg.eps_minus == PipelineConfig::kAuto) {
                    eps_minus = pick_eps(curve_minus.rowwise().sum(), eps_grid);
                }
            } catch (const GcvDegenerate&) {
                run.eps_fallback = true;
                run.warnings.push_back("step-1 GCV degenerate; using fallback epsilon");
            }
        } else {
            run.eps_fallback = true;
            run.warnings.push_back("step-1 GCV had no usable pair; using fallback epsilon");
        }
    }
    run.eps_pair = eps_pair;
    run.eps_minus = eps_minus;

    // Phase B: eps_U over the extracted predictors (or complement blocks).
    double eps_u = cfg.eps_u == PipelineConfig::kAuto ? cfg.fallback_eps : cfg.eps_u;
    if (cfg.eps_u == PipelineConfig::kAuto) {
        Eigen::MatrixXd curve_u = Eigen::MatrixXd::Zero(ng, ntasks);
        Eigen::VectorXd ok = Eigen::VectorXd::Zero(ntasks);
        parallel_for(ntasks, cfg.workers, [&](int k) {
            const auto [i, j] = pairs[static_cast<std::size_t>(k)];
            try {
                const PairGrams g = pair_grams(data, i, j);
                const Eigen::MatrixXd u =
                    predictor_values(data, i, j, g, cfg, eps_minus, eps_pair);
                const GramMatrix g_u = gram(u, {gamma_heuristic(u)});
                curve_u.col(k) = gcv_eps_curve(g.pair.centered, g_u.centered, eps_grid);
                ok(k) = 1.0;
            } catch (const std::exception&) {
            }
        });
        if (ok.sum() > 0.0) {
            try {
                eps_u = pick_eps(curve_u.rowwise().sum(), eps_grid);
            } catch (const GcvDegenerate&) {
                run.eps_fallback = true;
                run.warnings.push_back("eps_U GCV degenerate; using fallback epsilon");
            }
        } else {
            run.eps_fallback = true;
            run.warnings.push_back("eps_U GCV had no usable pair; using fallback epsilon");
        }
    }
    run.eps_u = eps_u;

    // Phase C: scores.
    PairScoreConfig pcfg;
    pcfg.gsir = GsirConfig{cfg.d, eps_minus, eps_pair};
    pcfg.eps_u = eps_u;
    pcfg.eps_relative = cfg.eps_relative;

    Eigen::VectorXd values = Eigen::VectorXd::Constant(ntasks, kNaN);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(ntasks));
    parallel_for(ntasks, cfg.workers, [&](int k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        try {
            values(k) =
                score_pair_detailed(data, i, j, pcfg, cfg.method == Method::Naive).score.value;
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    });

    double max_finite = 0.0;
    for (int k = 0; k < ntasks; ++k) {
        if (std::isfinite(values(k))) max_finite = std::max(max_finite, values(k));
    }
    for (int k = 0; k < ntasks; ++k) {
        if (!errors[static_cast<std::size_t>(k)]) continue;
        if (!is_pair_failure(errors[static_cast<std::size_t>(k)])) {
            std::rethrow_exception(errors[static_cast<std::size_t>(k)]);
        }
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        run.failed_pairs.emplace_back(i, j);
        values(k) = cfg.keep_failed_edges ? max_finite : 0.0;
        run.warnings.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                               ") failed; score set to " +
                               (cfg.keep_failed_edges ? "max" : "zero"));
    }

    EdgeScoreMatrix out;
    out.p = p;
    out.scores = Eigen::MatrixXd::Zero(p, p);
    for (int k = 0; k < ntasks; ++k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        out.scores(i, j) = out.scores(j, i) = values(k);
    }
    out.validate();
    return out;
}

GraphEstimate threshold_graph(const EdgeScoreMatrix& scores, double rho) {
    scores.validate();
    if (!std::isfinite(rho)) {
        // +/-inf are permitted shortcuts for empty/complete graphs
        if (std::isnan(rho)) throw InvalidInput("threshold must not be NaN");
    }
    GraphEstimate out;
    out.p = scores.p;
    out.threshold = rho;
    out.score_matrix = scores;
    for (int i = 1; i < scores.p; ++i) {
        for (int j = 0; j < i; ++j) {
            if (scores.scores(i, j) > rho) out.edges.emplace_back(i, j);
        }
    }
    return out;
}

GraphEstimate estimate(const Eigen::MatrixXd& data, const PipelineConfig& cfg) {
    RunInfo info;
    const EdgeScoreMatrix scores = score_all_pairs(data, cfg, &info);
    double rho = cfg.rho;
    if (rho == PipelineConfig::kAuto) {
        try {
            // The neighborhood-regression GCV has its own ridge shift; use the
            // fixed default rather than the tuned eps_u, whose large selected
            // values would flatten the criterion across the rho grid.
            rho = gcv_rho(data, scores.scores, cfg.grid.rho_values, cfg.fallback_eps);
        } catch (const GcvDegenerate&) {
            rho = 0.04; // grid midpoint fallback
            info.rho_fallback = true;
            info.warnings.push_back("rho GCV degenerate; using grid midpoint 0.04");
        }
    }
    info.rho = rho;
    GraphEstimate out = threshold_graph(scores, rho);
    out.config = cfg;
    out.info = info;
    return out;
}

} // namespace sgm
