#include "sgm/gsir.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

// G (G + eps I)^-1 = I - eps (G + eps I)^-1, via Cholesky of the shifted matrix.
Eigen::MatrixXd smoother(const Eigen::MatrixXd& g, double eps) {
    const auto n = g.rows();
    Eigen::MatrixXd shifted = g;
    shifted.diagonal().array() += eps;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw NearSingular("G + eps I is not positive definite");
    }
    Eigen::MatrixXd out = -eps * llt.solve(Eigen::MatrixXd::Identity(n, n));
    out.diagonal().array() += 1.0;
    return 0.5 * (out + out.transpose()).eval();
}

void check_cfg(const GramMatrix& g_minus, const GramMatrix& g_pair, const GsirConfig& cfg) {
    if (g_minus.n != g_pair.n) {
        throw InvalidInput("Gram matrices must share the sample size");
    }
    if (!(cfg.eps_minus > 0.0) || !(cfg.eps_pair > 0.0)) {
        throw InvalidInput("GSIR regularizers must be positive");
    }
    if (cfg.d < 1 || cfg.d > g_minus.n - 1) {
        throw InvalidInput("predictor dimension d must lie in [1, n-1]");
    }
}

} // namespace

SymMatrix gsir_matrix(const GramMatrix& g_minus, const GramMatrix& g_pair, const GsirConfig& cfg) {
    check_cfg(g_minus, g_pair, cfg);
    const Eigen::MatrixXd c = smoother(g_minus.centered, cfg.eps_minus);
    const Eigen::MatrixXd s = smoother(g_pair.centered, cfg.eps_pair);
    Eigen::MatrixXd m = c * (s * c);
    return SymMatrix(0.5 * (m + m.transpose()));
}

SufficientPredictor extract_predictor(const GramMatrix& g_minus, const GramMatrix& g_pair,
                                      const GsirConfig& cfg, std::pair<int, int> pair) {
    check_cfg(g_minus, g_pair, cfg);
    const SymMatrix m = gsir_matrix(g_minus, g_pair, cfg);
    const EigenDecomp ed = eigh(m);
    const double lmax = ed.values(0);

    int usable = 0;
    for (int k = 0; k < ed.values.size(); ++k) {
        if (ed.values(k) > 1e-10 * lmax && ed.values(k) > 0.0) ++usable;
    }
    if (usable < cfg.d) {
        throw RankDeficient(usable);
    }

    const auto n = g_minus.centered.rows();
    Eigen::MatrixXd shifted = g_minus.centered;
    shifted.diagonal().array() += cfg.eps_minus;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw NearSingular("G- + eps I is not positive definite");
    }

    SufficientPredictor out;
    out.pair = pair;
    out.eigenvalues = ed.values.head(cfg.d);
    out.coefficients.resize(n, cfg.d);
    out.values.resize(n, cfg.d);
    for (int r = 0; r < cfg.d; ++r) {
        Eigen::VectorXd b = llt.solve(ed.vectors.col(r));
        const Eigen::VectorXd t = g_minus.centered * b;
        const Eigen::VectorXd centered = t.array() - t.mean();
        const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(n - 1));
        if (!(sd > 0.0) || !std::isfinite(sd)) {
            throw RankDeficient(r);
        }
        out.coefficients.col(r) = b / sd;
        out.values.col(r) = g_minus.centered * out.coefficients.col(r);
    }
    return out;
}

} // namespace sgm
