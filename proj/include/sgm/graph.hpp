#ifndef SGM_GRAPH_HPP
#define SGM_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sgm/ccco.hpp"
#include "sgm/tuning.hpp"

namespace sgm {

/// Symmetric nonnegative p x p score matrix with zero diagonal.
struct EdgeScoreMatrix {
    int p = 0;
    Eigen::MatrixXd scores;

    void validate() const;
};

enum class Method { Sgm, Naive };

/// End-to-end configuration. Regularizers set to kAuto are selected by GCV;
/// rho set to kAuto is selected by gcv_rho (falling back to the grid
/// midpoint 0.04 when degenerate).
struct PipelineConfig {
    static constexpr double kAuto = -1.0;

    int d = 2;
    Method method = Method::Sgm;
    GcvGrid grid;
    double eps_pair = kAuto;
    double eps_minus = kAuto;
    double eps_u = kAuto;
    double rho = kAuto;
    bool eps_relative = true;
    double fallback_eps = 1e-2;
    bool keep_failed_edges = true; // failed pairs keep the edge (max score)
    int workers = 1;

    void validate() const;
};

/// Every tuning constant resolved during a run, plus bookkeeping about
/// fallbacks and failed pairs.
struct RunInfo {
    double eps_pair = 0.0;
    double eps_minus = 0.0;
    double eps_u = 0.0;
    double rho = 0.0;
    bool eps_fallback = false;
    bool rho_fallback = false;
    std::vector<std::pair<int, int>> failed_pairs;
    std::vector<std::string> warnings;
};

struct GraphEstimate {
    int p = 0;
    std::vector<std::pair<int, int>> edges; // i > j
    double threshold = 0.0;
    EdgeScoreMatrix score_matrix;
    PipelineConfig config;
    RunInfo info;
};

/// Scores every pair i > j with the two-step statistic (or the naive
/// variant). Three phases when regularizers are auto: GCV for the step-1
/// epsilons, GCV for eps_U over extracted predictors, then scoring. Pairs
/// failing with DegenerateSample/RankDeficient/NearSingular are recorded and
/// assigned the maximum finite score (or 0 when keep_failed_edges=false).
EdgeScoreMatrix score_all_pairs(const Eigen::MatrixXd& data, const PipelineConfig& cfg,
                                RunInfo* info = nullptr);

/// Strict-inequality thresholding of a score matrix.
GraphEstimate threshold_graph(const EdgeScoreMatrix& scores, double rho);

/// Full pipeline: score_all_pairs, gcv_rho, threshold_graph.
GraphEstimate estimate(const Eigen::MatrixXd& data, const PipelineConfig& cfg);

} // namespace sgm

#endif
