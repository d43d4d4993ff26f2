#ifndef SGM_KERNEL_HPP
#define SGM_KERNEL_HPP

#include <vector>

#include <Eigen/Dense>

#include "sgm/numerics.hpp"

namespace sgm {

/// Column selection over an n x p sample matrix.
struct VariableBlock {
    enum class Tag { Single, Pair, Complement, Predictor };

    Tag tag;
    std::vector<int> column_indices;

    static VariableBlock single(int i) { return {Tag::Single, {i}}; }
    static VariableBlock pair(int i, int j) { return {Tag::Pair, {i, j}}; }
    static VariableBlock complement(int i, int j, int p);
    static VariableBlock predictor(std::vector<int> cols) { return {Tag::Predictor, std::move(cols)}; }
};

struct KernelConfig {
    double gamma; // inverse squared bandwidth of the Gaussian RBF kernel
};

/// Gaussian RBF Gram matrix K and its doubly centered version G = QKQ,
/// with Q = I - ones/n.
struct GramMatrix {
    Eigen::MatrixXd raw;
    Eigen::MatrixXd centered;
    int n;
};

/// Bandwidth heuristic: gamma = 1 / (mean pairwise Euclidean distance)^2.
/// Exact over all n(n-1)/2 pairs for n <= 2000; subsampled (fixed seed)
/// above that.
double gamma_heuristic(const Eigen::MatrixXd& rows);

GramMatrix gram(const Eigen::MatrixXd& rows, const KernelConfig& cfg);

/// Rows of `data` restricted to the block's columns, sample order preserved.
Eigen::MatrixXd block_rows(const Eigen::MatrixXd& data, const VariableBlock& block);

} // namespace sgm

#endif
