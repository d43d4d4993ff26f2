#ifndef SGM_CCCO_HPP
#define SGM_CCCO_HPP

#include <utility>

#include <Eigen/Dense>

#include "sgm/gsir.hpp"
#include "sgm/kernel.hpp"

namespace sgm {

struct CccoInput {
    GramMatrix g_iu; // kernel on (X^i_a, U_a)
    GramMatrix g_ju; // kernel on (X^j_a, U_a)
    GramMatrix g_u;  // kernel on U_a
    double eps_u;
};

struct EdgeScore {
    std::pair<int, int> pair; // i > j
    double value;
};

/// Hilbert-Schmidt norm of the estimated conjoined conditional covariance
/// operator: || A^{1/2} B^{1/2} - A^{1/2} G_U (G_U + eps Q)^+ B^{1/2} ||_F
/// with A, B the centered (X,U) Grams and Q the centering projector.
double ccco_norm(const CccoInput& input);

/// Per-pair scoring configuration. The step-1 (GSIR) regularizers are applied
/// relative to lambda_max of the matrix they shift (the same convention the
/// GCV criterion itself uses) unless eps_relative=false; eps_u is always an
/// absolute shift so the statistic keeps a fixed scale against the rho grid.
struct PairScoreConfig {
    GsirConfig gsir{2, 1e-2, 1e-2};
    double eps_u = 1e-2;
    bool eps_relative = true;
};

struct PairResult {
    EdgeScore score;
    double gamma_minus = 0.0;
    double gamma_pair = 0.0;
    double gamma_iu = 0.0;
    double gamma_ju = 0.0;
    double gamma_u = 0.0;
    Eigen::VectorXd gsir_eigenvalues; // empty for the naive method
};

/// Full two-step statistic for one pair; `naive` replaces the extracted
/// predictor with the raw complement block. The returned score is the CCCO
/// norm divided by n, the scale on which the threshold grid operates.
PairResult score_pair_detailed(const Eigen::MatrixXd& data, int i, int j,
                               const PairScoreConfig& cfg, bool naive);

EdgeScore pair_score(const Eigen::MatrixXd& data, std::pair<int, int> pair,
                     const GsirConfig& gsir_cfg, double eps_u);

EdgeScore naive_pair_score(const Eigen::MatrixXd& data, std::pair<int, int> pair, double eps_u);

/// Largest eigenvalue of a symmetric PSD matrix by deterministic power
/// iteration; used to translate relative regularizers into shifts.
double lambda_max(const Eigen::MatrixXd& m);

} // namespace sgm

#endif
