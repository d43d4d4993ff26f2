#include <doctest.h>

#include <cmath>
#include <random>

#include "sgm/errors.hpp"
#include "sgm/gsir.hpp"
#include "sgm/simgen.hpp"

using namespace sgm;

namespace {

GramMatrix gram_of(const Eigen::MatrixXd& x) { return gram(x, {gamma_heuristic(x)}); }

// Literal triple-solve construction of the GSIR matrix, independent of the
// smoother identities used by the library.
Eigen::MatrixXd oracle_gsir(const Eigen::MatrixXd& gm, const Eigen::MatrixXd& gp,
                            double em, double ep) {
    const auto n = gm.rows();
    const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd wm = (gm + em * i).ldlt().solve(i);
    const Eigen::MatrixXd wp = (gp + ep * i).ldlt().solve(i);
    return wm * gm * gp * wp * gm * wm;
}

} // namespace

TEST_CASE("gsir_matrix matches the literal triple-solve oracle") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal;
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 20 + 5 * rep;
        Eigen::MatrixXd xm(n, 3), xp(n, 2);
        for (int a = 0; a < n; ++a) {
            for (int c = 0; c < 3; ++c) xm(a, c) = normal(rng);
            for (int c = 0; c < 2; ++c) xp(a, c) = normal(rng);
        }
        const GramMatrix gm = gram_of(xm);
        const GramMatrix gp = gram_of(xp);
        const GsirConfig cfg{2, 0.05, 0.1};
        const Eigen::MatrixXd got = gsir_matrix(gm, gp, cfg).mat();
        const Eigen::MatrixXd want = oracle_gsir(gm.centered, gp.centered, 0.05, 0.1);
        CHECK((got - want).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + want.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("gsir_matrix is symmetric PSD") {
    const Dataset ds = gen_model_1(60, 5);
    const GramMatrix gm = gram_of(ds.data.leftCols(3));
    const GramMatrix gp = gram_of(ds.data.rightCols(2));
    const SymMatrix m = gsir_matrix(gm, gp, {2, 1e-2, 1e-2});
    const EigenDecomp ed = eigh(m);
    CHECK(ed.values.minCoeff() >= -1e-8 * ed.values.maxCoeff());
}

TEST_CASE("extract_predictor output satisfies its own invariants") {
    const Dataset ds = gen_model_2(80, 9);
    const GramMatrix gm = gram_of(ds.data.leftCols(4));
    const GramMatrix gp = gram_of(ds.data.rightCols(2));
    const SufficientPredictor pred = extract_predictor(gm, gp, {2, 1e-2, 1e-2}, {5, 4});
    CHECK(pred.values.rows() == 80);
    CHECK(pred.values.cols() == 2);
    CHECK(pred.pair == std::pair<int, int>{5, 4});
    // eigenvalues descending and positive
    CHECK(pred.eigenvalues(0) >= pred.eigenvalues(1));
    CHECK(pred.eigenvalues(1) > 0.0);
    // values = G- * coefficients exactly
    CHECK((pred.values - gm.centered * pred.coefficients).cwiseAbs().maxCoeff() < 1e-12);
    // unit sample variance per column
    for (int c = 0; c < 2; ++c) {
        const Eigen::VectorXd v = pred.values.col(c);
        const Eigen::VectorXd centered = v.array() - v.mean();
        CHECK(centered.squaredNorm() / 79.0 == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("extract_predictor rejects an over-large d with the usable rank") {
    // duplicated sample rows cap the Gram rank well below n-1
    const Dataset base = gen_model_1(6, 3);
    Eigen::MatrixXd data(12, 5);
    data << base.data, base.data;
    const GramMatrix gm = gram_of(data.leftCols(3));
    const GramMatrix gp = gram_of(data.rightCols(2));
    try {
        extract_predictor(gm, gp, {9, 1e-2, 1e-2});
        FAIL("expected RankDeficient");
    } catch (const RankDeficient& e) {
        CHECK(e.available < 9);
        CHECK(e.available > 0);
    }
}

TEST_CASE("invalid configuration is rejected") {
    const Dataset ds = gen_model_1(20, 3);
    const GramMatrix gm = gram_of(ds.data.leftCols(3));
    const GramMatrix gp = gram_of(ds.data.rightCols(2));
    CHECK_THROWS_AS(gsir_matrix(gm, gp, {2, -1.0, 1e-2}), InvalidInput);
    CHECK_THROWS_AS(gsir_matrix(gm, gp, {0, 1e-2, 1e-2}), InvalidInput);
}

TEST_CASE("predictor recovers the quadratic driver in Model I") {
    // pair (X2, X4): the complement {X1, X3, X5} predicts the pair through
    // X1^2 (X4 = X1^2 + X2^2 + noise), so the leading predictor must track it
    const Dataset ds = gen_model_1(400, 21);
    const Eigen::MatrixXd x_minus = block_rows(ds.data, VariableBlock::complement(3, 1, 5));
    const Eigen::MatrixXd x_pair = block_rows(ds.data, VariableBlock::pair(1, 3));
    const SufficientPredictor pred =
        extract_predictor(gram_of(x_minus), gram_of(x_pair), {2, 1e-2, 1e-1});
    const Eigen::ArrayXd x1sq = ds.data.col(0).array().square();
    double best = 0.0;
    for (int c = 0; c < 2; ++c) {
        const Eigen::ArrayXd u = pred.values.col(c).array();
        const double cu = ((u - u.mean()) * (x1sq - x1sq.mean())).sum();
        const double corr = cu / std::sqrt((u - u.mean()).square().sum() *
                                           (x1sq - x1sq.mean()).square().sum());
        best = std::max(best, std::abs(corr));
    }
    CHECK(best > 0.7);
}
