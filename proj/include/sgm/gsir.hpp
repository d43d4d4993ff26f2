#ifndef SGM_GSIR_HPP
#define SGM_GSIR_HPP

#include <utility>

#include <Eigen/Dense>

#include "sgm/kernel.hpp"
#include "sgm/numerics.hpp"

namespace sgm {

struct GsirConfig {
    int d = 2;         // predictor dimension
    double eps_minus;  // regularizer for the complement-block Gram
    double eps_pair;   // regularizer for the pair-block Gram
};

/// d-dimensional sufficient predictor extracted for one pair (i, j).
/// `values` holds the predictor evaluated at the n sample points, one
/// column per eigenfunction, rescaled to unit sample variance; the
/// scaling is folded into `coefficients` so that
/// values == g_minus.centered * coefficients holds exactly.
struct SufficientPredictor {
    Eigen::MatrixXd values;       // n x d
    Eigen::MatrixXd coefficients; // n x d
    std::pair<int, int> pair;
    Eigen::VectorXd eigenvalues;  // d, descending
};

/// The n x n matrix whose leading eigenvectors carry the sample GSIR
/// solution: (G- + eta I)^-1 G- G+ (G+ + eps I)^-1 G- (G- + eta I)^-1,
/// symmetrized.
SymMatrix gsir_matrix(const GramMatrix& g_minus, const GramMatrix& g_pair, const GsirConfig& cfg);

SufficientPredictor extract_predictor(const GramMatrix& g_minus, const GramMatrix& g_pair,
                                      const GsirConfig& cfg,
                                      std::pair<int, int> pair = {-1, -1});

} // namespace sgm

#endif
