#include <algorithm>
#include <cmath>
#include <string>

#include "sparsesel/error.hpp"
#include "sparsesel/experiments.hpp"
#include "sparsesel/kernels.hpp"
#include "sparsesel/rng.hpp"

namespace sparsesel::experiments {

TrueModel TrueModel::from_coefficients(Eigen::VectorXd beta)
{
    TrueModel tm;
    tm.support = support_of(beta, 0.0);
    tm.k_star = static_cast<Index>(tm.support.size());
    tm.b_big = beta.size() > 0 ? beta.cwiseAbs().maxCoeff() : 0.0;
    tm.d_big = beta.lpNorm<1>();
    tm.beta_star = std::move(beta);
    return tm;
}

namespace {

constexpr int kMaxDraws = 64;

// Centre and scale each column to mean 0 and (1/n)-norm 1. Returns false when
// a column is (numerically) constant.
bool standardize_columns(Eigen::MatrixXd& x)
{
    const double n = static_cast<double>(x.rows());
    for (Index j = 0; j < x.cols(); ++j) {
        auto col = x.col(j);
        col.array() -= col.sum() / n;
        col.array() -= col.sum() / n;
        const double norm = std::sqrt(col.squaredNorm() / n);
        if (!(norm > 1e-8)) return false;
        col /= norm;
    }
    return true;
}

bool draw_orthogonalized(Eigen::MatrixXd& x, Rng& rng)
{
    const Index n = x.rows();
    const double nd = static_cast<double>(n);
    for (Index j = 0; j < x.cols(); ++j) {
        auto col = x.col(j);
        for (Index i = 0; i < n; ++i) col(i) = rng.rademacher();
        // Two passes of modified Gram-Schmidt against the constant vector and
        // the previous columns.
        for (int pass = 0; pass < 2; ++pass) {
            col.array() -= col.sum() / nd;
            for (Index k = 0; k < j; ++k) col -= (x.col(k).dot(col) / nd) * x.col(k);
        }
        const double norm = std::sqrt(col.squaredNorm() / nd);
        if (!(norm > 1e-6)) return false;
        col /= norm;
    }
    return true;
}

void fill_factor_model(Eigen::MatrixXd& x, const DesignSpec& spec, Rng& rng)
{
    const Index n = x.rows();
    const Index m = x.cols();
    if (spec.kind == DesignKind::equicorrelated) {
        const double a = std::sqrt(spec.rho);
        const double e = std::sqrt(1.0 - spec.rho);
        Eigen::VectorXd f(n);
        for (Index i = 0; i < n; ++i) f(i) = rng.rademacher();
        for (Index j = 0; j < m; ++j)
            for (Index i = 0; i < n; ++i) x(i, j) = a * f(i) + e * rng.rademacher();
        return;
    }
    const Index nblocks = (m + spec.block_size - 1) / spec.block_size;
    const double a_out = std::sqrt(spec.rho_out);
    const double a_in = std::sqrt(spec.rho_in - spec.rho_out);
    const double e = std::sqrt(1.0 - spec.rho_in);
    Eigen::VectorXd g(n);
    Eigen::MatrixXd f(n, nblocks);
    for (Index i = 0; i < n; ++i) g(i) = rng.rademacher();
    for (Index b = 0; b < nblocks; ++b)
        for (Index i = 0; i < n; ++i) f(i, b) = rng.rademacher();
    for (Index j = 0; j < m; ++j) {
        const Index b = j / spec.block_size;
        for (Index i = 0; i < n; ++i) x(i, j) = a_out * g(i) + a_in * f(i, b) + e * rng.rademacher();
    }
}

double max_offdiag(const Eigen::MatrixXd& g)
{
    double worst = 0.0;
    for (Index j = 0; j < g.cols(); ++j)
        for (Index k = 0; k < j; ++k) worst = std::max(worst, std::abs(g(k, j)));
    return worst;
}

} // namespace

Design gen_design(Index n, Index num_predictors, const DesignSpec& spec,
                  std::optional<double> l_target, std::uint64_t seed)
{
    if (n < 2 || num_predictors < 1) throw Error(Errc::invalid_argument, "need n >= 2 and M >= 1");
    switch (spec.kind) {
    case DesignKind::orthogonalized:
        if (n <= num_predictors)
            throw Error(Errc::infeasible_design,
                        "orthogonalized design needs n > M (centring uses one dimension)");
        break;
    case DesignKind::equicorrelated:
        if (!(spec.rho >= 0.0 && spec.rho < 1.0))
            throw Error(Errc::invalid_argument, "rho must lie in [0, 1)");
        break;
    case DesignKind::block:
        if (!(spec.rho_in >= 0.0 && spec.rho_in < 1.0 && spec.rho_out >= 0.0 &&
              spec.rho_out <= spec.rho_in))
            throw Error(Errc::invalid_argument, "need 0 <= rho_out <= rho_in < 1");
        if (spec.block_size < 1) throw Error(Errc::invalid_argument, "block_size must be positive");
        break;
    }

    Rng rng(seed);
    Eigen::MatrixXd x(n, num_predictors);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        bool ok = false;
        if (spec.kind == DesignKind::orthogonalized) {
            ok = draw_orthogonalized(x, rng);
        } else {
            fill_factor_model(x, spec, rng);
            ok = standardize_columns(x);
        }
        if (!ok) continue;
        const double lb = x.cwiseAbs().maxCoeff();
        if (l_target && lb > *l_target) continue;
        return Design{x, lb, max_offdiag(kernels::gram(x))};
    }
    throw Error(Errc::infeasible_design, "no draw satisfied the design constraints");
}

std::string_view to_string(NoiseModel m)
{
    switch (m) {
    case NoiseModel::squared_real: return "squared_real";
    case NoiseModel::squared_binary: return "squared_binary";
    case NoiseModel::binary_noise: return "binary_noise";
    case NoiseModel::logistic: return "logistic";
    }
    return "unknown";
}

NoiseModel parse_noise_model(std::string_view text)
{
    if (text == "squared_real") return NoiseModel::squared_real;
    if (text == "squared_binary") return NoiseModel::squared_binary;
    if (text == "binary_noise") return NoiseModel::binary_noise;
    if (text == "logistic") return NoiseModel::logistic;
    throw Error(Errc::invalid_argument, "unknown response model '" + std::string(text) + "'");
}

ResponseKind data_kind(const ResponseModel& rm)
{
    return (rm.model == NoiseModel::squared_binary || rm.model == NoiseModel::logistic)
               ? ResponseKind::binary
               : ResponseKind::real;
}

ResponseKind tuning_kind(const ResponseModel& rm)
{
    return rm.model == NoiseModel::squared_real ? ResponseKind::real : ResponseKind::binary;
}

Eigen::VectorXd gen_response(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta_star,
                             const ResponseModel& rm, std::uint64_t seed)
{
    if (beta_star.size() != x.cols())
        throw Error(Errc::dimension_mismatch, "beta* length does not match the design");
    const Eigen::VectorXd eta = kernels::x_vec(x, beta_star);
    Eigen::VectorXd y(eta.size());
    Rng rng(seed);
    switch (rm.model) {
    case NoiseModel::squared_real:
        if (!(rm.sigma >= 0.0)) throw Error(Errc::invalid_argument, "sigma must be nonnegative");
        for (Index i = 0; i < eta.size(); ++i)
            y(i) = eta(i) + rm.sigma * (rm.gaussian ? rng.normal() : rng.rademacher());
        break;
    case NoiseModel::squared_binary:
        for (Index i = 0; i < eta.size(); ++i) {
            const double p = 0.5 + eta(i);
            if (!(p >= 0.0 && p <= 1.0))
                throw Error(Errc::linear_prob_out_of_range,
                            "linear probability " + std::to_string(p) + " at row " + std::to_string(i));
            y(i) = rng.bernoulli(p) ? 1.0 : 0.0;
        }
        break;
    case NoiseModel::binary_noise:
        for (Index i = 0; i < eta.size(); ++i) y(i) = eta(i) + (rng.bernoulli(0.5) ? 0.5 : -0.5);
        break;
    case NoiseModel::logistic:
        for (Index i = 0; i < eta.size(); ++i) y(i) = rng.bernoulli(logistic(eta(i))) ? 1.0 : 0.0;
        break;
    }
    return y;
}

} // namespace sparsesel::experiments
