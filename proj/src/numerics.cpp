#include "sgm/numerics.hpp"

#include <cmath>
#include <lapacke.h>

namespace sgm {

SymMatrix::SymMatrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidInput("SymMatrix requires a nonempty square matrix");
    }
    if (!m.allFinite()) {
        throw InvalidInput("SymMatrix entries must be finite");
    }
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw InvalidInput("matrix is not symmetric (max |M - M^T| = " + std::to_string(asym) + ")");
    }
    m_ = 0.5 * (m + m.transpose());
}

EigenDecomp eigh(const SymMatrix& m) {
    const int n = m.dim();
    Eigen::MatrixXd vectors = m.mat(); // column-major, overwritten by LAPACK
    Eigen::VectorXd values(n);
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors.data(), n, values.data());
    if (info != 0) {
        throw InvalidInput("dsyevd failed with info=" + std::to_string(info));
    }
    // LAPACK returns ascending order; flip to descending.
    values.reverseInPlace();
    vectors = vectors.rowwise().reverse().eval();
    // Sign convention: largest-magnitude entry of each eigenvector positive.
    for (int k = 0; k < n; ++k) {
        int arg = 0;
        double best = -1.0;
        for (int r = 0; r < n; ++r) {
            const double a = std::abs(vectors(r, k));
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        if (vectors(arg, k) < 0.0) {
            vectors.col(k) = -vectors.col(k);
        }
    }
    return {std::move(values), std::move(vectors)};
}

namespace {

SymMatrix rebuild(const EigenDecomp& ed, const Eigen::VectorXd& transformed) {
    Eigen::MatrixXd scaled = ed.vectors * transformed.asDiagonal();
    Eigen::MatrixXd out = scaled * ed.vectors.transpose();
    return SymMatrix(0.5 * (out + out.transpose()));
}

} // namespace

SymMatrix reg_inverse(const SymMatrix& m, double eps) {
    if (!(eps > 0.0)) {
        throw InvalidInput("reg_inverse requires eps > 0");
    }
    EigenDecomp ed = eigh(m);
    const double lmin = ed.values(m.dim() - 1);
    if (lmin + eps <= 1e-14) {
        throw NearSingular("lambda_min + eps <= 1e-14 in reg_inverse");
    }
    Eigen::VectorXd inv = (ed.values.array() + eps).inverse();
    return rebuild(ed, inv);
}

SymMatrix pseudo_inverse(const SymMatrix& m, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw InvalidInput("pseudo_inverse requires rel_tol in (0, 1)");
    }
    EigenDecomp ed = eigh(m);
    const double lmax = ed.values.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv(ed.values.size());
    for (int k = 0; k < inv.size(); ++k) {
        const double v = ed.values(k);
        inv(k) = (std::abs(v) > rel_tol * lmax) ? 1.0 / v : 0.0;
    }
    return rebuild(ed, inv);
}

SymMatrix psd_sqrt(const SymMatrix& m) {
    EigenDecomp ed = eigh(m);
    const double lmax = ed.values(0);
    const double floor = -1e-8 * std::max(lmax, 0.0);
    Eigen::VectorXd roots(ed.values.size());
    for (int k = 0; k < roots.size(); ++k) {
        const double v = ed.values(k);
        if (v < floor) {
            throw NotPsd("eigenvalue " + std::to_string(v) + " below PSD tolerance");
        }
        roots(k) = std::sqrt(std::max(v, 0.0));
    }
    return rebuild(ed, roots);
}

double fro_norm(const Eigen::MatrixXd& m) {
    if (!m.allFinite()) {
        throw InvalidInput("fro_norm requires finite entries");
    }
    return m.norm();
}

} // namespace sgm
