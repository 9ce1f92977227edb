#include <cmath>

#include <gtest/gtest.h>

#include "sparsesel/error.hpp"
#include "sparsesel/experiments.hpp"
#include "sparsesel/json_io.hpp"
#include "test_util.hpp"

using namespace sparsesel;
using namespace sparsesel::experiments;

namespace {

ExperimentConfig selection_config(int reps)
{
    ExperimentConfig cfg;
    cfg.n = 800;
    cfg.num_predictors = 20;
    cfg.k_star = 3;
    cfg.response.model = NoiseModel::binary_noise;
    cfg.signal = {SignalKind::at_threshold, 3.0, tuning::Regime::weak};
    cfg.replications = reps;
    return cfg;
}

} // namespace

TEST(Design, OrthogonalizedIsExact)
{
    DesignSpec spec;
    const Design d = gen_design(64, 8, spec, std::nullopt, 1);
    EXPECT_LE(d.max_coherence, 1e-8);
    EXPECT_NO_THROW(Dataset::from_standardized(d.x, Eigen::VectorXd::Zero(64), ResponseKind::real));
    EXPECT_DOUBLE_EQ(d.l_bound, d.x.cwiseAbs().maxCoeff());
    try {
        gen_design(8, 8, spec, std::nullopt, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::infeasible_design);
    }
}

TEST(Design, EquicorrelatedZeroIsIndependent)
{
    DesignSpec spec{DesignKind::equicorrelated, 0.0};
    const Design d = gen_design(2000, 10, spec, std::nullopt, 2);
    EXPECT_LE(d.max_coherence, 5.0 / std::sqrt(2000.0));
}

TEST(Design, EquicorrelatedConcentrates)
{
    DesignSpec spec{DesignKind::equicorrelated, 0.3};
    const Design d = gen_design(2000, 10, spec, std::nullopt, 3);
    const Eigen::MatrixXd g = d.x.transpose() * d.x / 2000.0;
    double mean = 0.0;
    for (Index j = 0; j < 10; ++j)
        for (Index k = 0; k < j; ++k) {
            EXPECT_NEAR(g(j, k), 0.3, 0.1);
            mean += g(j, k) / 45.0;
        }
    // pairs share the factor, so the average is the tighter check
    EXPECT_NEAR(mean, 0.3, 0.03);
}

TEST(Design, BlockStructure)
{
    DesignSpec spec;
    spec.kind = DesignKind::block;
    spec.rho_in = 0.5;
    spec.rho_out = 0.1;
    spec.block_size = 3;
    const Design d = gen_design(4000, 6, spec, std::nullopt, 4);
    const Eigen::MatrixXd g = d.x.transpose() * d.x / 4000.0;
    EXPECT_NEAR(g(0, 1), 0.5, 0.06);
    EXPECT_NEAR(g(0, 4), 0.1, 0.06);
}

TEST(Design, LTargetRespected)
{
    DesignSpec spec{DesignKind::equicorrelated, 0.2};
    const Design d = gen_design(200, 5, spec, 3.0, 5);
    EXPECT_LE(d.l_bound, 3.0);
    EXPECT_THROW(gen_design(200, 5, spec, 0.5, 5), Error);
}

TEST(Response, NullLogisticIsFair)
{
    const Eigen::MatrixXd x = testutil::orthogonal_design(2000, 5, 1);
    const Eigen::VectorXd y = gen_response(x, Eigen::VectorXd::Zero(5), {NoiseModel::logistic}, 7);
    EXPECT_GE(y.mean(), 0.45);
    EXPECT_LE(y.mean(), 0.55);
}

TEST(Response, NoiselessAndDeterministic)
{
    const Eigen::MatrixXd x = testutil::orthogonal_design(100, 4, 1);
    const Eigen::VectorXd beta = Eigen::Vector4d(1, -2, 0, 0.5);
    ResponseModel rm{NoiseModel::squared_real, 0.0};
    EXPECT_EQ(gen_response(x, beta, rm, 1), x * beta);
    rm.sigma = 1.0;
    EXPECT_EQ(gen_response(x, beta, rm, 9), gen_response(x, beta, rm, 9));
    EXPECT_NE(gen_response(x, beta, rm, 9), gen_response(x, beta, rm, 10));
    const Eigen::VectorXd noise = gen_response(x, Eigen::VectorXd::Zero(4), rm, 3);
    EXPECT_NEAR(noise.cwiseAbs().maxCoeff(), 1.0, 1e-15);
}

TEST(Response, LinearProbabilityRange)
{
    const Eigen::MatrixXd x = testutil::orthogonal_design(100, 4, 1);
    try {
        gen_response(x, Eigen::Vector4d(2, 0, 0, 0), {NoiseModel::squared_binary}, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::linear_prob_out_of_range);
    }
    const Eigen::VectorXd y = gen_response(x, Eigen::Vector4d(0.1, 0, 0, 0), {NoiseModel::squared_binary}, 1);
    for (Index i = 0; i < y.size(); ++i) EXPECT_TRUE(y(i) == 0.0 || y(i) == 1.0);
}

TEST(Guarantees, Values)
{
    EXPECT_DOUBLE_EQ(guarantee_value(Guarantee::exact_selection_ls, 0.05, 20), 0.8475);
    EXPECT_DOUBLE_EQ(guarantee_value(Guarantee::exact_selection_logistic, 0.05, 20), 0.75);
    EXPECT_DOUBLE_EQ(guarantee_value(Guarantee::inclusion_ls, 0.05, 20), 0.9475);
    EXPECT_DOUBLE_EQ(guarantee_value(Guarantee::inclusion_logistic, 0.05, 20), 0.85);
    EXPECT_DOUBLE_EQ(guarantee_value(Guarantee::ball_coverage, 0.05, 20), 0.95);
    EXPECT_EQ(parse_guarantee("null_model"), Guarantee::null_model);
    try {
        parse_guarantee("selection_v9");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::unknown_guarantee);
    }
}

TEST(Verify, Examples)
{
    EXPECT_EQ(verify(1.0, 0.0, 0.8475), Verdict::meets);
    EXPECT_EQ(verify(0.2, 0.03, 0.8475), Verdict::fails);
    EXPECT_EQ(verify(0.84, 0.04, 0.8475), Verdict::inconclusive);
}

TEST(ConfidenceInterval, NormalAndExact)
{
    EXPECT_NEAR(ci_half_width(0.5, 100, CiMethod::normal), 0.098, 1e-12);
    EXPECT_EQ(ci_half_width(1.0, 100, CiMethod::normal), 0.0);
    // Clopper-Pearson upper limit for 0 of 10 is 1 - 0.025^(1/10).
    EXPECT_NEAR(ci_half_width(0.0, 10, CiMethod::exact), 1.0 - std::pow(0.025, 0.1), 1e-12);
    EXPECT_EQ(ci_half_width(1.0, 10, CiMethod::exact), 0.0);
}

TEST(Config, Validation)
{
    ExperimentConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.k_star = 30;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.delta = 1.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.method = Method::lasso_logistic;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.replications = 0;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(MonteCarlo, DeterministicAndThreadIndependent)
{
    const ExperimentConfig cfg = selection_config(40);
    const json a = run_mc(cfg);
    const json b = run_mc(cfg);
    const json s = run_mc_serial(cfg);
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a.dump(), s.dump());
}

TEST(MonteCarlo, ProbabilityOrdering)
{
    for (double mult : {0.1, 0.5, 1.0, 3.0}) {
        ExperimentConfig cfg = selection_config(40);
        cfg.signal.value = mult;
        const ExperimentReport rep = run_mc(cfg);
        EXPECT_LE(rep.p_exact, std::min(rep.p_contains, rep.p_contained));
        EXPECT_GE(rep.p_exact, rep.p_contains + rep.p_contained - 1.0 - 1e-12);
        for (const auto& r : rep.records) EXPECT_EQ(r.exact, r.contains && r.contained);
    }
}

TEST(MonteCarlo, MonotoneInSignalAndThresholdOperative)
{
    const auto sweep = run_sweep(selection_config(60), {0.1, 1.0, 3.0});
    ASSERT_EQ(sweep.size(), 3u);
    EXPECT_LE(sweep[0].p_exact, sweep[1].p_exact);
    EXPECT_LE(sweep[1].p_exact, sweep[2].p_exact);
    ExperimentConfig weak = selection_config(60);
    weak.signal.value = 0.1;
    EXPECT_LT(run_mc(weak).p_contains, 0.5);
}

TEST(MonteCarlo, SelectionMeetsFloor)
{
    const ExperimentReport rep = run_mc(selection_config(100));
    EXPECT_EQ(rep.errors, 0);
    EXPECT_EQ(rep.identif_fraction, 1.0);
    EXPECT_GE(rep.p_exact, 0.8475);
    EXPECT_EQ(rep.verdict, Verdict::meets);
}

TEST(MonteCarlo, NullModel)
{
    for (Method m : {Method::lasso_ls, Method::enet_ls}) {
        ExperimentConfig cfg;
        cfg.k_star = 0;
        cfg.method = m;
        cfg.response.model = NoiseModel::squared_binary;
        cfg.tuning_mode = TuningMode::ball;
        cfg.guarantee = Guarantee::null_model;
        cfg.replications = 100;
        const ExperimentReport rep = run_mc(cfg);
        EXPECT_EQ(rep.errors, 0);
        EXPECT_GE(rep.p_exact, 0.95);
    }
}

TEST(MonteCarlo, ErrorsCountAsFailures)
{
    ExperimentConfig cfg = selection_config(5);
    cfg.response.model = NoiseModel::squared_binary; // signals of 3 x 2r leave [0, 1]
    const ExperimentReport rep = run_mc(cfg);
    EXPECT_EQ(rep.errors, 5);
    EXPECT_EQ(rep.p_exact, 0.0);
    EXPECT_FALSE(rep.records[0].error.empty());
}

TEST(MonteCarlo, LargeRegimeNeedsBounds)
{
    ExperimentConfig cfg = selection_config(2);
    cfg.method = Method::enet_ls;
    cfg.signal.regime = tuning::Regime::large;
    const ExperimentReport rep = run_mc(cfg);
    EXPECT_EQ(rep.errors, 2);
    cfg.b_big = 5.0;
    EXPECT_EQ(run_mc(cfg).errors, 0);
}
