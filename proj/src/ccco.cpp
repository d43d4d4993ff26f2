#include "sgm/ccco.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "sgm/errors.hpp"

namespace sgm {

double lambda_max(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lam = 0.0;
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd w = m * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        w /= norm;
        const double next = w.dot(m * w);
        if (std::abs(next - lam) <= 1e-12 * std::abs(next)) {
            return next;
        }
        lam = next;
        v = std::move(w);
    }
    return lam;
}

double ccco_norm(const CccoInput& input) {
    const auto n = input.g_u.centered.rows();
    if (input.g_iu.n != input.g_u.n || input.g_ju.n != input.g_u.n) {
        throw InvalidInput("ccco_norm: Gram matrices must share the sample size");
    }
    if (!(input.eps_u > 0.0)) {
        throw InvalidInput("ccco_norm requires eps_u > 0");
    }
    const Eigen::MatrixXd& a = input.g_iu.centered;
    const Eigen::MatrixXd& b = input.g_ju.centered;
    if (a.diagonal().minCoeff() < -1e-8 * std::abs(a.diagonal().maxCoeff()) ||
        b.diagonal().minCoeff() < -1e-8 * std::abs(b.diagonal().maxCoeff())) {
        throw NotPsd("centered Gram matrix has a negative diagonal entry");
    }
    // I - G_U (G_U + eps Q)^+ equals eps (G_U + eps I)^-1 on the centered
    // subspace and on its complement alike, so the statistic reduces to
    // sqrt(tr(Y A Y B)) with Y = eps (G_U + eps I)^-1.
    Eigen::MatrixXd shifted = input.g_u.centered;
    shifted.diagonal().array() += input.eps_u;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw NotPsd("G_U + eps I is not positive definite");
    }
    Eigen::MatrixXd y = input.eps_u * llt.solve(Eigen::MatrixXd::Identity(n, n));
    y = 0.5 * (y + y.transpose()).eval();
    const Eigen::MatrixXd p = y * a;
    const Eigen::MatrixXd r = y * b;
    const double sq = (p.array() * r.transpose().array()).sum();
    return std::sqrt(std::max(sq, 0.0));
}

namespace {

Eigen::MatrixXd with_column(const Eigen::VectorXd& x, const Eigen::MatrixXd& u) {
    Eigen::MatrixXd out(x.size(), u.cols() + 1);
    out.col(0) = x;
    out.rightCols(u.cols()) = u;
    return out;
}

} // namespace

PairResult score_pair_detailed(const Eigen::MatrixXd& data, int i, int j,
                               const PairScoreConfig& cfg, bool naive) {
    const auto n = data.rows();
    const auto p = data.cols();
    if (p < 3) {
        throw InvalidInput("pair scoring requires p >= 3");
    }
    if (n < 4) {
        throw InvalidInput("pair scoring requires n >= 4");
    }
    if (i == j || i < 0 || j < 0 || i >= p || j >= p) {
        throw InvalidInput("invalid pair indices");
    }
    const int hi = std::max(i, j);
    const int lo = std::min(i, j);

    PairResult out;
    out.score.pair = {hi, lo};

    const Eigen::MatrixXd x_minus = block_rows(data, VariableBlock::complement(hi, lo, static_cast<int>(p)));
    out.gamma_minus = gamma_heuristic(x_minus);

    Eigen::MatrixXd u;
    if (naive) {
        u = x_minus;
    } else {
        const Eigen::MatrixXd x_pair = block_rows(data, VariableBlock::pair(lo, hi));
        out.gamma_pair = gamma_heuristic(x_pair);
        const GramMatrix g_minus = gram(x_minus, {out.gamma_minus});
        const GramMatrix g_pair = gram(x_pair, {out.gamma_pair});
        GsirConfig gcfg = cfg.gsir;
        if (cfg.eps_relative) {
            gcfg.eps_minus *= lambda_max(g_minus.centered);
            gcfg.eps_pair *= lambda_max(g_pair.centered);
        }
        const SufficientPredictor pred = extract_predictor(g_minus, g_pair, gcfg, {hi, lo});
        out.gsir_eigenvalues = pred.eigenvalues;
        u = pred.values;
    }

    const Eigen::MatrixXd xi_u = with_column(data.col(i), u);
    const Eigen::MatrixXd xj_u = with_column(data.col(j), u);
    out.gamma_iu = gamma_heuristic(xi_u);
    out.gamma_ju = gamma_heuristic(xj_u);
    out.gamma_u = gamma_heuristic(u);

    // eps_u is applied as an absolute shift: the step-2 statistic must keep a
    // fixed scale against the rho grid, and a spectrum-relative shift would let
    // heavy smoothing collapse the statistic onto the (large) unconditional
    // norm even for null data.
    CccoInput in{gram(xi_u, {out.gamma_iu}), gram(xj_u, {out.gamma_ju}), gram(u, {out.gamma_u}),
                 cfg.eps_u};
    out.score.value = ccco_norm(in) / static_cast<double>(n);
    return out;
}

EdgeScore pair_score(const Eigen::MatrixXd& data, std::pair<int, int> pair,
                     const GsirConfig& gsir_cfg, double eps_u) {
    PairScoreConfig cfg;
    cfg.gsir = gsir_cfg;
    cfg.eps_u = eps_u;
    return score_pair_detailed(data, pair.first, pair.second, cfg, false).score;
}

EdgeScore naive_pair_score(const Eigen::MatrixXd& data, std::pair<int, int> pair, double eps_u) {
    PairScoreConfig cfg;
    cfg.eps_u = eps_u;
    return score_pair_detailed(data, pair.first, pair.second, cfg, true).score;
}

} // namespace sgm
