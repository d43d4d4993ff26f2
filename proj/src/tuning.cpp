#include "sgm/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sgm/errors.hpp"
#include "sgm/kernel.hpp"

namespace sgm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Criterion at every grid value from one eigendecomposition of g2:
// numerator c * || diag(1/(lam+c)) V^T G1 ||_F with c = eps * lmax,
// denominator (1/n) sum_k c / (lam_k + c).
Eigen::VectorXd curve_from_eigh(const EigenDecomp& ed, const Eigen::MatrixXd& g1,
                                const std::vector<double>& grid) {
    const auto n = g1.rows();
    const double lmax = ed.values(0);
    Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
    const Eigen::MatrixXd vt_g1 = ed.vectors.transpose() * g1;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double c = grid[k] * lmax;
        if (!(c > 0.0)) {
            out(static_cast<Eigen::Index>(k)) = kInf;
            continue;
        }
        const Eigen::ArrayXd shifted = ed.values.array() + c;
        const double denom = (c / shifted).sum() / static_cast<double>(n);
        if (!(denom > 0.0) || !std::isfinite(denom)) {
            out(static_cast<Eigen::Index>(k)) = kInf;
            continue;
        }
        const double num = c * (vt_g1.array().colwise() / shifted).matrix().norm();
        out(static_cast<Eigen::Index>(k)) = num / denom;
    }
    return out;
}

} // namespace

void GcvGrid::validate() const {
    if (eps_values.empty() || rho_values.empty()) {
        throw InvalidConfig("GCV grids must be nonempty");
    }
    for (double e : eps_values) {
        if (!(e > 0.0)) throw InvalidConfig("eps grid values must be positive");
    }
    if (!std::is_sorted(eps_values.rbegin(), eps_values.rend(),
                        [](double a, double b) { return a < b; })) {
        throw InvalidConfig("eps grid must be sorted descending");
    }
    if (!std::is_sorted(rho_values.begin(), rho_values.end())) {
        throw InvalidConfig("rho grid must be sorted ascending");
    }
}

Eigen::VectorXd gcv_eps_curve(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2,
                              const std::vector<double>& grid) {
    if (g1.rows() != g2.rows() || g1.rows() != g1.cols() || g2.rows() != g2.cols()) {
        throw InvalidInput("gcv_eps_curve: matrices must be square and conformable");
    }
    if (grid.empty()) {
        throw InvalidInput("gcv_eps_curve: empty grid");
    }
    const EigenDecomp ed = eigh(SymMatrix(g2));
    if (!(ed.values(0) > 0.0)) {
        return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size()), kInf);
    }
    return curve_from_eigh(ed, g1, grid);
}

double pick_eps(const Eigen::VectorXd& curve, const std::vector<double>& grid) {
    if (static_cast<std::size_t>(curve.size()) != grid.size()) {
        throw InvalidInput("pick_eps: curve/grid size mismatch");
    }
    int best = -1;
    for (int k = 0; k < curve.size(); ++k) {
        if (!std::isfinite(curve(k))) continue;
        // grid is descending, so <= moves ties toward the smaller eps
        if (best < 0 || curve(k) <= curve(best)) best = k;
    }
    if (best < 0) {
        throw GcvDegenerate("GCV criterion undefined at every grid value");
    }
    return grid[static_cast<std::size_t>(best)];
}

double gcv_eps(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2,
               const std::vector<double>& grid) {
    return pick_eps(gcv_eps_curve(g1, g2, grid), grid);
}

double gcv_rho(const Eigen::MatrixXd& data, const Eigen::MatrixXd& scores,
               const std::vector<double>& rho_grid, double eps_for_neighborhood) {
    const auto n = data.rows();
    const auto p = data.cols();
    if (scores.rows() != p || scores.cols() != p) {
        throw InvalidInput("gcv_rho: score matrix must be p x p");
    }
    if (rho_grid.empty()) {
        throw InvalidInput("gcv_rho: empty rho grid");
    }
    if (!(eps_for_neighborhood > 0.0)) {
        throw InvalidInput("gcv_rho: eps must be positive");
    }

    std::vector<Eigen::MatrixXd> node_gram(static_cast<std::size_t>(p));
    std::vector<double> node_norm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        const Eigen::MatrixXd col = data.col(i);
        node_gram[static_cast<std::size_t>(i)] = gram(col, {gamma_heuristic(col)}).centered;
        node_norm[static_cast<std::size_t>(i)] = node_gram[static_cast<std::size_t>(i)].norm();
    }

    // Neighborhoods repeat across rho values; cache each node's term.
    std::map<std::pair<int, std::vector<int>>, double> cache;
    auto node_term = [&](int i, const std::vector<int>& nbrs) {
        const auto key = std::make_pair(i, nbrs);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Eigen::MatrixXd cols(n, static_cast<Eigen::Index>(nbrs.size()));
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            cols.col(static_cast<Eigen::Index>(k)) = data.col(nbrs[k]);
        }
        const Eigen::MatrixXd gc = gram(cols, {gamma_heuristic(cols)}).centered;
        const EigenDecomp ed = eigh(SymMatrix(gc));
        double term;
        if (!(ed.values(0) > 0.0)) {
            term = node_norm[static_cast<std::size_t>(i)];
        } else {
            const std::vector<double> single{eps_for_neighborhood};
            const double v = curve_from_eigh(ed, node_gram[static_cast<std::size_t>(i)], single)(0);
            term = std::isfinite(v) ? v : node_norm[static_cast<std::size_t>(i)];
        }
        cache.emplace(key, term);
        return term;
    };

    double best_val = kInf;
    double best_rho = rho_grid.front();
    bool any_edge = false;
    for (double rho : rho_grid) {
        double total = 0.0;
        bool nonempty = false;
        for (int i = 0; i < p; ++i) {
            std::vector<int> nbrs;
            for (int j = 0; j < p; ++j) {
                if (j != i && scores(i, j) > rho) nbrs.push_back(j);
            }
            if (nbrs.empty()) {
                total += node_norm[static_cast<std::size_t>(i)];
            } else {
                nonempty = true;
                total += node_term(i, nbrs);
            }
        }
        any_edge = any_edge || nonempty;
        if (total < best_val) {
            best_val = total;
            best_rho = rho;
        }
    }
    if (!any_edge) {
        throw GcvDegenerate("every rho in the grid yields an empty graph");
    }
    return best_rho;
}

} // namespace sgm
