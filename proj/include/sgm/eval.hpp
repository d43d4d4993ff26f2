#ifndef SGM_EVAL_HPP
#define SGM_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/simgen.hpp"

namespace sgm {

struct RocCurve {
    std::vector<std::pair<double, double>> points; // (fpr, tpr), (0,0) .. (1,1)
    double auc = 0.0;                              // Mann-Whitney rank statistic
};

/// ROC of a score matrix against ground truth; both edge classes must be
/// nonempty.
RocCurve roc(const EdgeScoreMatrix& scores, const GroundTruth& truth);

/// tpr of a piecewise-linear ROC at a given fpr.
double roc_interpolate(const RocCurve& curve, double fpr);

/// Which simulated model to draw from; p/n_hubs only used by tags 3 and 4.
struct SimSpec {
    int tag = 1; // 1..5
    int n = 100;
    int p = 50;
    int n_hubs = 5;
};

Dataset generate(const SimSpec& spec, std::uint64_t seed);

struct ReplicateSummary {
    std::vector<double> aucs;      // one per rep, in rep order
    std::vector<std::uint64_t> seeds;
    double mean_auc = 0.0;
    double sd_auc = 0.0;
    std::vector<double> fpr_grid;  // {0, 0.01, ..., 1}
    std::vector<double> mean_tpr;  // vertical average across reps
    double tuned_eps_pair = 0.0;   // averages over the tuning reps
    double tuned_eps_minus = 0.0;
    double tuned_eps_u = 0.0;
};

/// Runs reps datasets with derived sub-seeds. Regularizers left on auto are
/// GCV-selected on the first min(5, reps) datasets; the remaining reps reuse
/// the averaged selections.
ReplicateSummary replicate(const SimSpec& spec, int reps, const PipelineConfig& cfg,
                           std::uint64_t master_seed);

/// CSV/SVG emission. `rows` of auc CSV: seed, method, auc.
void write_auc_csv(const std::string& path, const std::vector<ReplicateSummary>& summaries,
                   const std::vector<std::string>& method_names);
void write_roc_csv(const std::string& path, const std::vector<ReplicateSummary>& summaries,
                   const std::vector<std::string>& method_names);
void write_roc_svg(const std::string& path, const std::vector<ReplicateSummary>& summaries,
                   const std::vector<std::string>& method_names);

} // namespace sgm

#endif
