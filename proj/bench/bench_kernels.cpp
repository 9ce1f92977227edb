// Serial reference vs OpenMP kernels, plus the two parallel drivers: the cone
// sampler and the Monte Carlo harness.

#include <benchmark/benchmark.h>

#include "sparsesel/diagnostics.hpp"
#include "sparsesel/experiments.hpp"
#include "sparsesel/kernels.hpp"
#include "sparsesel/rng.hpp"

using namespace sparsesel;

namespace {

Eigen::MatrixXd random_matrix(Index n, Index m)
{
    Rng rng(42);
    Eigen::MatrixXd x(n, m);
    for (Index j = 0; j < m; ++j)
        for (Index i = 0; i < n; ++i) x(i, j) = rng.rademacher();
    return x;
}

Eigen::VectorXd random_vector(Index n)
{
    Rng rng(7);
    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.uniform();
    return v;
}

template <Eigen::MatrixXd (*F)(const Eigen::MatrixXd&)>
void BM_matrix(benchmark::State& state)
{
    const Eigen::MatrixXd x = random_matrix(state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(F(x));
}

template <Eigen::MatrixXd (*F)(const Eigen::MatrixXd&, const Eigen::VectorXd&)>
void BM_weighted(benchmark::State& state)
{
    const Eigen::MatrixXd x = random_matrix(state.range(0), state.range(1));
    const Eigen::VectorXd w = random_vector(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(F(x, w));
}

template <Eigen::VectorXd (*F)(const Eigen::MatrixXd&, const Eigen::VectorXd&)>
void BM_xt_vec(benchmark::State& state)
{
    const Eigen::MatrixXd x = random_matrix(state.range(0), state.range(1));
    const Eigen::VectorXd v = random_vector(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(F(x, v));
}

template <Eigen::VectorXd (*F)(const Eigen::MatrixXd&, const Eigen::VectorXd&)>
void BM_x_vec(benchmark::State& state)
{
    const Eigen::MatrixXd x = random_matrix(state.range(0), state.range(1));
    const Eigen::VectorXd b = random_vector(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(F(x, b));
}

void shapes(benchmark::internal::Benchmark* b)
{
    b->Args({800, 20})->Args({2000, 100})->Args({10000, 50})->Unit(benchmark::kMicrosecond);
}

diagnostics::StabilOptions sampler_options(benchmark::State& state)
{
    diagnostics::StabilOptions o;
    o.b = 0.5;
    o.sample_count = state.range(0);
    return o;
}

void BM_stabil_serial(benchmark::State& state)
{
    const Eigen::MatrixXd sigma = kernels::serial::gram(random_matrix(400, 20));
    const auto o = sampler_options(state);
    for (auto _ : state) benchmark::DoNotOptimize(diagnostics::check_stabil_serial(sigma, {0, 1, 2}, o));
}

void BM_stabil_omp(benchmark::State& state)
{
    const GramMatrix g{kernels::serial::gram(random_matrix(400, 20))};
    const auto o = sampler_options(state);
    for (auto _ : state) benchmark::DoNotOptimize(diagnostics::check_stabil(g, {0, 1, 2}, o));
}

experiments::ExperimentConfig mc_config(benchmark::State& state)
{
    experiments::ExperimentConfig cfg;
    cfg.replications = static_cast<int>(state.range(0));
    return cfg;
}

void BM_mc_serial(benchmark::State& state)
{
    const auto cfg = mc_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_mc_serial(cfg));
}

void BM_mc_omp(benchmark::State& state)
{
    const auto cfg = mc_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_mc(cfg));
}

} // namespace

BENCHMARK(BM_matrix<kernels::serial::gram>)->Name("gram/serial")->Apply(shapes);
BENCHMARK(BM_matrix<kernels::omp::gram>)->Name("gram/omp")->Apply(shapes);
BENCHMARK(BM_weighted<kernels::serial::weighted_gram>)->Name("weighted_gram/serial")->Apply(shapes);
BENCHMARK(BM_weighted<kernels::omp::weighted_gram>)->Name("weighted_gram/omp")->Apply(shapes);
BENCHMARK(BM_xt_vec<kernels::serial::scaled_xt_vec>)->Name("scaled_xt_vec/serial")->Apply(shapes);
BENCHMARK(BM_xt_vec<kernels::omp::scaled_xt_vec>)->Name("scaled_xt_vec/omp")->Apply(shapes);
BENCHMARK(BM_x_vec<kernels::serial::x_vec>)->Name("x_vec/serial")->Apply(shapes);
BENCHMARK(BM_x_vec<kernels::omp::x_vec>)->Name("x_vec/omp")->Apply(shapes);
BENCHMARK(BM_matrix<kernels::serial::abs_cross>)->Name("abs_cross/serial")->Apply(shapes);
BENCHMARK(BM_matrix<kernels::omp::abs_cross>)->Name("abs_cross/omp")->Apply(shapes);
BENCHMARK(BM_stabil_serial)->Name("stabil_sampler/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stabil_omp)->Name("stabil_sampler/omp")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_serial)->Name("run_mc/serial")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_omp)->Name("run_mc/omp")->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
