#ifndef SGM_NUMERICS_HPP
#define SGM_NUMERICS_HPP

#include <Eigen/Dense>

#include "sgm/errors.hpp"

namespace sgm {

/// Dense symmetric matrix. The constructor rejects asymmetry beyond 1e-10
/// and stores the symmetrized form (M + M^T)/2.
class SymMatrix {
  public:
    explicit SymMatrix(Eigen::MatrixXd m);

    static SymMatrix identity(int n) { return SymMatrix(Eigen::MatrixXd::Identity(n, n)); }
    static SymMatrix zero(int n) { return SymMatrix(Eigen::MatrixXd::Zero(n, n)); }

    const Eigen::MatrixXd& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

  private:
    Eigen::MatrixXd m_;
};

/// Eigendecomposition with eigenvalues sorted descending and a fixed
/// eigenvector sign convention (largest-magnitude entry positive, ties
/// broken by lowest index), so repeated runs are bitwise identical.
struct EigenDecomp {
    Eigen::VectorXd values;  // descending
    Eigen::MatrixXd vectors; // orthonormal columns
};

EigenDecomp eigh(const SymMatrix& m);

/// (m + eps*I)^-1 through the eigendecomposition.
SymMatrix reg_inverse(const SymMatrix& m, double eps);

/// Moore-Penrose pseudo-inverse; eigenvalues with |lambda| <= rel_tol * max|lambda|
/// are zeroed. All eigenvalues below tolerance yields the zero matrix.
SymMatrix pseudo_inverse(const SymMatrix& m, double rel_tol = 1e-10);

/// PSD square root; eigenvalues below -1e-8 * lambda_max raise NotPsd,
/// negative values above that are clamped to zero.
SymMatrix psd_sqrt(const SymMatrix& m);

double fro_norm(const Eigen::MatrixXd& m);

} // namespace sgm

#endif
