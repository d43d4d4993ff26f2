#include "sgm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "sgm/errors.hpp"

namespace sgm {

VariableBlock VariableBlock::complement(int i, int j, int p) {
    if (i == j || i < 0 || j < 0 || i >= p || j >= p) {
        throw InvalidBlock("complement block requires distinct in-range i, j");
    }
    std::vector<int> cols;
    cols.reserve(p - 2);
    for (int k = 0; k < p; ++k) {
        if (k != i && k != j) cols.push_back(k);
    }
    return {Tag::Complement, std::move(cols)};
}

namespace {

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& rows) {
    const Eigen::VectorXd sq = rows.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, rows.rows()) + sq.transpose().replicate(rows.rows(), 1)
                         - 2.0 * rows * rows.transpose();
    return d2.cwiseMax(0.0);
}

} // namespace

double gamma_heuristic(const Eigen::MatrixXd& rows) {
    const auto n = rows.rows();
    if (n < 2) {
        throw InvalidInput("gamma_heuristic requires at least 2 rows");
    }
    if (!rows.allFinite()) {
        throw InvalidInput("gamma_heuristic requires finite rows");
    }
    double sum = 0.0;
    std::int64_t count = 0;
    if (n <= 2000) {
        const Eigen::MatrixXd d2 = squared_distances(rows);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = a + 1; b < n; ++b) {
                sum += std::sqrt(d2(a, b));
            }
        }
        count = static_cast<std::int64_t>(n) * (n - 1) / 2;
    } else {
        std::mt19937_64 rng(0x5367u); // fixed seed, cost control for large n
        std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
        const std::int64_t budget = 2'000'000;
        for (std::int64_t t = 0; t < budget; ++t) {
            Eigen::Index a = pick(rng), b = pick(rng);
            if (a == b) continue;
            sum += (rows.row(a) - rows.row(b)).norm();
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    if (!(mean > 0.0)) {
        throw DegenerateSample("all pairwise distances are zero");
    }
    return 1.0 / (mean * mean);
}

GramMatrix gram(const Eigen::MatrixXd& rows, const KernelConfig& cfg) {
    const auto n = rows.rows();
    if (n == 0) {
        throw InvalidInput("gram requires nonempty rows");
    }
    if (!rows.allFinite()) {
        throw InvalidInput("gram requires finite rows");
    }
    if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma)) {
        throw InvalidInput("gamma must be finite and positive");
    }
    const Eigen::MatrixXd d2 = squared_distances(rows);
    Eigen::MatrixXd raw = (-cfg.gamma * d2).array().exp();
    raw = 0.5 * (raw + raw.transpose()).eval();
    raw.diagonal().setOnes();
    // G = QKQ without forming Q: subtract row/column means, add grand mean.
    const Eigen::VectorXd rmean = raw.rowwise().mean();
    const double gmean = rmean.mean();
    Eigen::MatrixXd centered = raw;
    centered.colwise() -= rmean;
    centered.rowwise() -= rmean.transpose();
    centered.array() += gmean;
    centered = 0.5 * (centered + centered.transpose()).eval();
    return {std::move(raw), std::move(centered), static_cast<int>(n)};
}

Eigen::MatrixXd block_rows(const Eigen::MatrixXd& data, const VariableBlock& block) {
    if (block.column_indices.empty()) {
        throw InvalidBlock("empty variable block");
    }
    Eigen::MatrixXd out(data.rows(), static_cast<Eigen::Index>(block.column_indices.size()));
    for (std::size_t k = 0; k < block.column_indices.size(); ++k) {
        const int c = block.column_indices[k];
        if (c < 0 || c >= data.cols()) {
            throw InvalidBlock("block column " + std::to_string(c) + " out of range");
        }
        out.col(static_cast<Eigen::Index>(k)) = data.col(c);
    }
    return out;
}

} // namespace sgm
