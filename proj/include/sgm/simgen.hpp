#ifndef SGM_SIMGEN_HPP
#define SGM_SIMGEN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sgm {

/// Ground-truth edge set; pairs normalized to i > j.
struct GroundTruth {
    std::vector<std::pair<int, int>> edges;

    bool has_edge(int i, int j) const;
};

struct Dataset {
    Eigen::MatrixXd data; // n x p
    GroundTruth truth;
};

/// X1=e1, X2=e2, X3=sin(2 X1)+e3, X4=X1^2+X2^2+e4, X5=e5 (p=5).
Dataset gen_model_1(int n, std::uint64_t seed);

/// X1=e1, X2=X1+e2, X3=e3, X4=(X1+X3)^2+e4, X5=cos(2 X2 X3)+e5,
/// X6=X4+e6 (p=6).
Dataset gen_model_2(int n, std::uint64_t seed);

/// Hub networks: p vertices partitioned into n_hubs equal groups, first
/// vertex of each group is the hub (standard normal); non-hub columns follow
/// tag 3: X^i = 1 + |X^h|^2 + e_i, or tag 4: X^i = sin((X^h)^3) e_i.
Dataset gen_hub_model(int n, int p, int n_hubs, int tag, std::uint64_t seed);

/// Gaussian X ~ N(0, Theta^-1) with the fixed 20 x 20 precision matrix;
/// truth = the 7 off-diagonal support pairs.
Dataset gen_model_5(int n, std::uint64_t seed);

/// The Model V precision matrix (symmetrized, positive definite).
Eigen::MatrixXd model_5_precision();

/// n x p matrix of independent standard normals with per-column substreams:
/// column c depends only on (seed, c), so widening p leaves earlier columns
/// unchanged.
Eigen::MatrixXd gaussian_matrix(int n, int p, std::uint64_t seed);

} // namespace sgm

#endif
