#include <sstream>

#include <gtest/gtest.h>

#include "sparsesel/csv.hpp"
#include "sparsesel/error.hpp"
#include "sparsesel/json_io.hpp"
#include "test_util.hpp"

using namespace sparsesel;

namespace {

template <class T>
void expect_round_trip(const T& value)
{
    const json first = value;
    const std::string text = first.dump();
    const T back = json::parse(text).get<T>();
    const json second = back;
    EXPECT_EQ(second.dump(), text);
    // parse -> serialize -> parse
    EXPECT_EQ(json::parse(second.dump()), json::parse(text));
}

} // namespace

TEST(Csv, ParsesQuotesAndLineEndings)
{
    std::istringstream in("a,\"b,c\",d\r\n1,2,\"3\"\r\n\"x\"\"y\",5,6\n");
    const csv::Table t = csv::parse(in);
    ASSERT_EQ(t.header.size(), 3u);
    EXPECT_EQ(t.header[1], "b,c");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][2], "3");
    EXPECT_EQ(t.rows[1][0], "x\"y");
}

TEST(Csv, Errors)
{
    std::istringstream ragged("a,b\n1,2,3\n");
    EXPECT_THROW(csv::parse(ragged), Error);
    std::istringstream open("a,b\n\"1,2\n");
    EXPECT_THROW(csv::parse(open), Error);
    std::istringstream empty("");
    EXPECT_THROW(csv::parse(empty), Error);
    EXPECT_THROW(csv::to_double("1.5x"), Error);
    EXPECT_THROW(csv::to_double(""), Error);
    EXPECT_EQ(csv::to_double(" -2.5e-3 "), -2.5e-3);
    EXPECT_EQ(csv::to_double("+4"), 4.0);
}

TEST(Csv, RegressionSplit)
{
    std::istringstream in("x1,y,x2\n1,0,4\n2,1,5\n3,0,7\n");
    const auto d = csv::to_regression(csv::parse(in), "y");
    EXPECT_EQ(d.predictor_names, (std::vector<std::string>{"x1", "x2"}));
    EXPECT_EQ(d.y, Eigen::Vector3d(0, 1, 0));
    EXPECT_EQ(d.x(2, 1), 7.0);
    std::istringstream in2("x1,x2\n1,2\n");
    try {
        csv::to_regression(csv::parse(in2), "target");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::missing_column);
        EXPECT_NE(std::string(e.what()).find("target"), std::string::npos);
    }
}

TEST(Csv, Escape)
{
    EXPECT_EQ(csv::escape("plain"), "plain");
    EXPECT_EQ(csv::escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv::escape("q\"x"), "\"q\"\"x\"");
}

TEST(Json, FitResultAndKktRoundTrip)
{
    const Dataset ds = testutil::random_squared(40, 5, 1);
    const FitResult res = fit(ds, {Loss::squared, 0.05, 0.0});
    expect_round_trip(res);
    expect_round_trip(kkt_check(ds, res.beta_hat, {Loss::squared, 0.05, 0.0}));
}

TEST(Json, BundleAndDiagnosticsRoundTrip)
{
    tuning::BundleRequest req;
    req.r_request.method = Method::lasso_logistic;
    req.r_request.n = 2000;
    req.r_request.num_predictors = 20;
    req.d_big = 40.0; // s underflows to 0 and the radius to inf
    const auto tb = tuning::make_bundle(req);
    EXPECT_TRUE(std::isinf(tb.ball_radius));
    expect_round_trip(tb);

    Eigen::MatrixXd g(2, 2);
    g << 1, 1, 1, 1;
    diagnostics::StabilOptions o;
    o.b = 0.9;
    o.sample_count = 200;
    expect_round_trip(diagnostics::check_stabil({g}, {0}, o));
    expect_round_trip(diagnostics::check_identif({g}, {0}, 0.5));
    const Dataset ds = testutil::random_binary(20, 3, 2);
    expect_round_trip(diagnostics::check_lidentif(ds, Eigen::VectorXd::Zero(3), {0}, 0.5, 0.1));
}

TEST(Json, ExperimentConfigAndReportRoundTrip)
{
    experiments::ExperimentConfig cfg;
    cfg.replications = 5;
    cfg.b = 0.6;
    cfg.design.kind = experiments::DesignKind::block;
    cfg.design.rho_in = 0.2;
    expect_round_trip(cfg);
    const json j = cfg;
    const auto back = j.get<experiments::ExperimentConfig>();
    EXPECT_EQ(back.b, cfg.b);
    EXPECT_FALSE(back.b_big.has_value());
    cfg.design = {};
    const auto rep = experiments::run_mc(cfg);
    expect_round_trip(rep);
    expect_round_trip(experiments::SweepPoint{0.5, 0.9, 0.01});
}

TEST(Json, PartialConfigKeepsDefaults)
{
    const auto cfg = json::parse(R"({"n": 100, "method": "enet_ls"})").get<experiments::ExperimentConfig>();
    EXPECT_EQ(cfg.n, 100);
    EXPECT_EQ(cfg.method, Method::enet_ls);
    EXPECT_EQ(cfg.num_predictors, 20);
    EXPECT_THROW(json::parse(R"({"method": "ridge"})").get<experiments::ExperimentConfig>(), Error);
    EXPECT_THROW(json::parse(R"({"guarantee": "thm"})").get<experiments::ExperimentConfig>(), Error);
}
