#include "sgm/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::pair<int, int> edge(int a, int b) {
    return {std::max(a, b), std::min(a, b)};
}

} // namespace

bool GroundTruth::has_edge(int i, int j) const {
    const auto e = edge(i, j);
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

Eigen::MatrixXd gaussian_matrix(int n, int p, std::uint64_t seed) {
    if (n < 1 || p < 1) throw InvalidConfig("gaussian_matrix: n, p must be positive");
    Eigen::MatrixXd out(n, p);
    for (int c = 0; c < p; ++c) {
        std::mt19937_64 engine(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(c))));
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int r = 0; r < n; ++r) out(r, c) = normal(engine);
    }
    return out;
}

Dataset gen_model_1(int n, std::uint64_t seed) {
    const Eigen::MatrixXd e = gaussian_matrix(n, 5, seed);
    Dataset out;
    out.data.resize(n, 5);
    out.data.col(0) = e.col(0);
    out.data.col(1) = e.col(1);
    out.data.col(2) = (2.0 * e.col(0).array()).sin() + e.col(2).array();
    out.data.col(3) = e.col(0).array().square() + e.col(1).array().square() + e.col(3).array();
    out.data.col(4) = e.col(4);
    out.truth.edges = {edge(0, 2), edge(0, 3), edge(1, 3), edge(0, 1)};
    return out;
}

Dataset gen_model_2(int n, std::uint64_t seed) {
    const Eigen::MatrixXd e = gaussian_matrix(n, 6, seed);
    Dataset out;
    out.data.resize(n, 6);
    const auto x1 = e.col(0).array();
    out.data.col(0) = x1;
    out.data.col(1) = x1 + e.col(1).array();
    out.data.col(2) = e.col(2);
    const auto x2 = out.data.col(1).array();
    const auto x3 = out.data.col(2).array();
    out.data.col(3) = (x1 + x3).square() + e.col(3).array();
    out.data.col(4) = (2.0 * x2 * x3).cos() + e.col(4).array();
    out.data.col(5) = out.data.col(3).array() + e.col(5).array();
    out.truth.edges = {edge(0, 1), edge(0, 3), edge(2, 3), edge(0, 2),
                       edge(1, 4), edge(2, 4), edge(1, 2), edge(3, 5)};
    return out;
}

Dataset gen_hub_model(int n, int p, int n_hubs, int tag, std::uint64_t seed) {
    if (tag != 3 && tag != 4) throw InvalidConfig("hub model tag must be 3 or 4");
    if (n_hubs < 1 || p < 2 * n_hubs) throw InvalidConfig("need at least two vertices per hub");
    if (p % n_hubs != 0) {
        throw InvalidConfig("p must be divisible by the number of hubs");
    }
    const int group = p / n_hubs;
    const Eigen::MatrixXd e = gaussian_matrix(n, p, seed);
    Dataset out;
    out.data.resize(n, p);
    for (int k = 0; k < n_hubs; ++k) {
        const int hub = k * group;
        out.data.col(hub) = e.col(hub);
        const auto h = out.data.col(hub).array();
        for (int i = hub + 1; i < hub + group; ++i) {
            if (tag == 3) {
                out.data.col(i) = 1.0 + h.square() + e.col(i).array();
            } else {
                out.data.col(i) = (h.cube()).sin() * e.col(i).array();
            }
            out.truth.edges.push_back(edge(hub, i));
        }
    }
    return out;
}

Eigen::MatrixXd model_5_precision() {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(20, 20);
    const double diag[20] = {1, 1, 1, 1.333, 3.010, 3.203, 1.543, 1.270, 1.544, 3,
                             1, 1, 1.2,   1, 1,     1,     1,     3,     2,     1};
    for (int i = 0; i < 20; ++i) theta(i, i) = diag[i];
    const struct {
        int a, b;
        double v;
    } off[] = {{3, 5, 1.418},   {4, 10, -0.744}, {5, 9, 0.519},  {5, 10, -0.577},
               {13, 17, 0.287}, {17, 20, 0.542}, {14, 15, 0.998}};
    for (const auto& o : off) {
        theta(o.a - 1, o.b - 1) = o.v;
        theta(o.b - 1, o.a - 1) = o.v;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(theta);
    if (llt.info() != Eigen::Success) {
        throw InvalidConfig("Model V precision matrix is not positive definite");
    }
    return theta;
}

Dataset gen_model_5(int n, std::uint64_t seed) {
    const Eigen::MatrixXd theta = model_5_precision();
    Eigen::LLT<Eigen::MatrixXd> llt(theta);
    const Eigen::MatrixXd z = gaussian_matrix(n, 20, seed);
    Dataset out;
    // rows x = L^-T z so cov(x) = L^-T L^-1 = Theta^-1 with Theta = L L^T
    out.data = llt.matrixU().solve(z.transpose()).transpose();
    out.truth.edges = {edge(2, 4),   edge(3, 9),   edge(4, 8), edge(4, 9),
                       edge(12, 16), edge(16, 19), edge(13, 14)};
    return out;
}

} // namespace sgm
