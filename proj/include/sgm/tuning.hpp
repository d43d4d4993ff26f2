#ifndef SGM_TUNING_HPP
#define SGM_TUNING_HPP

#include <vector>

#include <Eigen/Dense>

#include "sgm/numerics.hpp"

namespace sgm {

/// Grids for the regularizer and threshold searches. eps descending,
/// rho ascending.
struct GcvGrid {
    std::vector<double> eps_values{10.0, 1.0, 1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> rho_values{0.02, 0.03, 0.04, 0.05, 0.06, 0.07};

    void validate() const;
};

/// GCV criterion for one (G1, G2) assignment evaluated at every grid value:
/// || G1 - G2 (G2 + eps lmax(G2) I)^-1 G1 ||_F over
/// (1/n) tr{ I - G2 (G2 + eps lmax(G2) I)^-1 }.
/// Entries where the denominator is not positive are +infinity. Callers
/// accumulate curves over pairs before minimizing.
Eigen::VectorXd gcv_eps_curve(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2,
                              const std::vector<double>& grid);

/// Minimizer of an accumulated curve; ties break toward the smaller eps.
/// Throws GcvDegenerate when no grid point has a finite value.
double pick_eps(const Eigen::VectorXd& curve, const std::vector<double>& grid);

/// Single-assignment convenience wrapper: curve + pick in one call.
double gcv_eps(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2,
               const std::vector<double>& grid);

/// Threshold selection: for each rho, threshold `scores` (symmetric p x p)
/// into a graph, regress each node's Gram on the Gram of its neighborhood
/// columns, and sum the printed criterion over nodes. Empty neighborhoods
/// contribute ||G_{X^i}||_F (identity hat matrix). Throws GcvDegenerate when
/// every rho yields an empty graph.
double gcv_rho(const Eigen::MatrixXd& data, const Eigen::MatrixXd& scores,
               const std::vector<double>& rho_grid, double eps_for_neighborhood);

} // namespace sgm

#endif
