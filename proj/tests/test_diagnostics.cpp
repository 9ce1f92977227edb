#include <cmath>

#include <gtest/gtest.h>

#include "sparsesel/diagnostics.hpp"
#include "sparsesel/error.hpp"
#include "sparsesel/experiments.hpp"
#include "test_util.hpp"

using namespace sparsesel;
using namespace sparsesel::diagnostics;

namespace {

Eigen::MatrixXd equicorrelated(Index m, double rho)
{
    Eigen::MatrixXd g = Eigen::MatrixXd::Constant(m, m, rho);
    g.diagonal().setOnes();
    return g;
}

StabilOptions opts_with(double b, double alpha, std::int64_t samples = 20000)
{
    StabilOptions o;
    o.b = b;
    o.alpha = alpha;
    o.sample_count = samples;
    return o;
}

} // namespace

TEST(Identif, IdentityPasses)
{
    const auto rep = check_identif({Eigen::MatrixXd::Identity(6, 6)}, {0, 2}, 0.01);
    EXPECT_EQ(rep.max_coherence, 0.0);
    EXPECT_TRUE(rep.passes);
    EXPECT_DOUBLE_EQ(rep.threshold, 0.005);
}

TEST(Identif, Equicorrelated)
{
    for (double rho : {0.01, 0.02, 0.05}) {
        const auto rep = check_identif({equicorrelated(5, rho)}, {0, 1}, 0.06);
        EXPECT_DOUBLE_EQ(rep.max_coherence, rho);
        EXPECT_EQ(rep.passes, rho <= 0.03);
        EXPECT_EQ(rep.passes, rep.margin >= 0.0);
    }
}

TEST(Identif, MatchesBruteForce)
{
    const Dataset ds = testutil::random_squared(20, 6, 3, 0.3);
    const GramMatrix g = gram(ds);
    const IndexSet s{0, 1};
    double worst = 0.0;
    for (Index j : s)
        for (Index k = 0; k < 6; ++k)
            if (k != j) worst = std::max(worst, std::abs(g.sigma_mat(j, k)));
    EXPECT_EQ(check_identif(g, s, 1.0).max_coherence, worst);
}

TEST(Identif, Errors)
{
    try {
        check_identif({Eigen::MatrixXd::Identity(3, 3)}, {}, 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::empty_support);
    }
    EXPECT_THROW(check_identif({Eigen::MatrixXd::Identity(3, 3)}, {0}, 0.0), Error);
    EXPECT_THROW(check_identif({Eigen::MatrixXd::Identity(3, 3)}, {5}, 0.1), Error);
}

TEST(BFromD, Examples)
{
    EXPECT_NEAR(b_from_d(1.0 / 15, 3, 0), 8.0 / 15, 1e-15);
    EXPECT_NEAR(b_from_d(0.05, 4, 0), 0.55, 1e-15);
    EXPECT_NEAR(b_from_d(1e-12, 3, 0), 1.0, 1e-10);
    try {
        b_from_d(0.2, 3, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::d_out_of_range);
    }
}

TEST(Stabil, IdentityCertifiedPass)
{
    for (double b : {0.1, 0.5, 1.0}) {
        const auto rep = check_stabil({Eigen::MatrixXd::Identity(5, 5)}, {1, 3}, opts_with(b, 3, 2000));
        EXPECT_TRUE(rep.sufficient_eig_ok);
        EXPECT_EQ(rep.sample_violations, 0);
        EXPECT_EQ(rep.verdict, StabilVerdict::certified_pass);
    }
}

TEST(Stabil, RankDeficientCertifiedFail)
{
    Eigen::MatrixXd g(2, 2);
    g << 1, 1, 1, 1;
    const auto rep = check_stabil({g}, {0}, opts_with(0.9, 3, 5000));
    EXPECT_FALSE(rep.sufficient_eig_ok);
    EXPECT_GT(rep.sample_violations, 0);
    EXPECT_EQ(rep.verdict, StabilVerdict::certified_fail);
    ASSERT_TRUE(rep.witness.has_value());
    const Eigen::VectorXd& v = *rep.witness;
    EXPECT_LE(std::abs(v(1)), 3 * std::abs(v(0)) + 1e-12);
    EXPECT_LT(v.dot(g * v), 0.9 * v(0) * v(0));
    // The hand witness (1, -1).
    const Eigen::Vector2d hand(1, -1);
    EXPECT_LT(hand.dot(g * hand), 0.9);
}

TEST(Stabil, CoherenceBridgeZeroViolations)
{
    for (double d : {0.02, 0.05})
        for (Index k : {2, 3})
            for (double alpha : {3.0, 4.0}) {
                // Off-diagonals touching the support are exactly d/k.
                const Index m = 8;
                Eigen::MatrixXd g = Eigen::MatrixXd::Identity(m, m);
                const double rho = d / static_cast<double>(k);
                for (Index j = 0; j < k; ++j)
                    for (Index q = 0; q < m; ++q)
                        if (q != j) g(j, q) = g(q, j) = (q % 2 ? rho : -rho);
                IndexSet s;
                for (Index j = 0; j < k; ++j) s.push_back(j);
                ASSERT_TRUE(check_identif({g}, s, d).passes);
                const auto rep = check_stabil({g}, s, opts_with(b_from_d(d, alpha, 0), alpha));
                EXPECT_EQ(rep.sample_violations, 0);
                EXPECT_NE(rep.verdict, StabilVerdict::certified_fail);
            }
}

TEST(Stabil, EigenCertificateImpliesNoSampledViolation)
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const GramMatrix g = gram(testutil::random_squared(25, 6, seed, 0.5));
        const auto rep = check_stabil(g, {0, 1}, opts_with(0.2, 3, 5000));
        if (rep.sufficient_eig_ok) EXPECT_EQ(rep.sample_violations, 0);
    }
}

TEST(Stabil, SerialAndParallelAgree)
{
    const GramMatrix g = gram(testutil::random_squared(30, 10, 3, 0.6));
    const auto opts = opts_with(0.6, 3, 30000);
    const auto par = check_stabil(g, {0, 1, 2}, opts);
    const auto ser = check_stabil_serial(g.sigma_mat, {0, 1, 2}, opts);
    EXPECT_EQ(par.sample_violations, ser.sample_violations);
    EXPECT_EQ(par.worst_slack, ser.worst_slack);
    EXPECT_EQ(par.verdict, ser.verdict);
    EXPECT_EQ(par.witness.has_value(), ser.witness.has_value());
    if (par.witness) EXPECT_EQ(*par.witness, *ser.witness);
}

TEST(Stabil, SamplesLieInCone)
{
    const Eigen::MatrixXd g = equicorrelated(7, 0.1);
    const IndexSet s{1, 4};
    for (double eps : {0.0, 0.3})
        for (std::uint64_t i = 0; i < 500; ++i) {
            const Eigen::VectorXd v = sample_cone_vector(g, s, 3.0, eps, 11, i);
            double on = 0.0, off = 0.0;
            for (Index j = 0; j < 7; ++j) (j == 1 || j == 4 ? on : off) += std::abs(v(j));
            EXPECT_LE(off, 3.0 * on + eps + 1e-12);
        }
}

TEST(LStabil, QuarterIdentityPasses)
{
    WeightedGram wg{0.25 * Eigen::MatrixXd::Identity(4, 4), Eigen::VectorXd::Constant(10, 0.25)};
    const auto rep = check_lstabil(wg, {0}, opts_with(0.2, 3, 2000));
    EXPECT_TRUE(rep.sufficient_eig_ok);
    EXPECT_EQ(rep.verdict, StabilVerdict::certified_pass);
}

TEST(LStabil, ScaledRankDeficientFails)
{
    Eigen::MatrixXd g(2, 2);
    g << 0.25, 0.25, 0.25, 0.25;
    WeightedGram wg{g, Eigen::VectorXd::Constant(4, 0.25)};
    const auto rep = check_lstabil(wg, {0}, opts_with(0.2, 3, 5000));
    EXPECT_EQ(rep.verdict, StabilVerdict::certified_fail);
}

TEST(LStabil, EigenOracleMargin)
{
    const Dataset ds = testutil::random_binary(60, 5, 2, 0.3);
    const Eigen::VectorXd beta = Eigen::VectorXd::LinSpaced(5, -0.5, 0.5);
    const WeightedGram wg = weighted_gram(ds, beta);
    // Smallest eigenvalue of the whole matrix bounds v'Sv / |v_S|^2 from below.
    const double b = min_eigenvalue(wg.sigma1_mat) - 1e-6;
    ASSERT_GT(b, 0.0);
    const auto rep = check_lstabil(wg, {0, 2}, opts_with(b, 3, 5000));
    EXPECT_EQ(rep.sample_violations, 0);
    EXPECT_EQ(rep.verdict, StabilVerdict::certified_pass);
}

TEST(Lidentif, ZeroBetaIsQuarterCoherence)
{
    const Dataset ds = testutil::random_binary(50, 6, 4, 0.2);
    const IndexSet s{0, 1};
    const auto li = check_lidentif(ds, Eigen::VectorXd::Zero(6), s, 1.0, 0.0);
    const auto id = check_identif(gram(ds), s, 1.0);
    EXPECT_NEAR(li.center_max, 0.25 * id.max_coherence, 1e-14);
    EXPECT_EQ(li.adjusted_max, li.center_max);
}

TEST(Lidentif, MatchesBruteForceAndBounds)
{
    const Dataset ds = testutil::random_binary(12, 4, 9, 0.4);
    Eigen::VectorXd beta(4);
    beta << 0.7, -0.3, 0, 0;
    const IndexSet s{0, 1};
    const double radius = 0.5;
    const auto li = check_lidentif(ds, beta, s, 0.5, radius);
    double center = 0.0, cross = 0.0, plain = 0.0;
    for (Index j : s)
        for (Index k = 0; k < 4; ++k) {
            if (k == j) continue;
            double a = 0.0, b = 0.0, p = 0.0;
            for (Index i = 0; i < 12; ++i) {
                double eta = 0.0;
                for (Index q = 0; q < 4; ++q) eta += ds.x()(i, q) * beta(q);
                a += logistic_deriv(eta) * ds.x()(i, j) * ds.x()(i, k);
                b += std::abs(ds.x()(i, j) * ds.x()(i, k));
                p += ds.x()(i, j) * ds.x()(i, k);
            }
            center = std::max(center, std::abs(a / 12));
            cross = std::max(cross, b / 12);
            plain = std::max(plain, std::abs(p / 12));
        }
    EXPECT_NEAR(li.center_max, center, 1e-14);
    EXPECT_NEAR(li.adjusted_max, center + radius * kLogisticCurvatureBound * cross, 1e-14);
    EXPECT_LE(li.center_max, 0.25 * cross + 1e-15);
    EXPECT_NEAR(kLogisticCurvatureBound, 1.0 / (6.0 * std::sqrt(3.0)), 1e-17);
}
