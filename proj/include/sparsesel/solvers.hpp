#pragma once

// The four penalized estimators
//
//   argmin_beta (1/n) sum_i loss_i(beta) + 2 r |beta|_1 + c |beta|_2^2
//
// for squared and logistic loss, with c = 0 giving the lasso and c > 0 the
// elastic net. No intercept is fitted: designs are centred.

#include <optional>
#include <string_view>
#include <vector>

#include "sparsesel/core.hpp"

namespace sparsesel {

enum class Loss { squared, logistic };

enum class Method { lasso_ls, enet_ls, lasso_logistic, enet_logistic };

std::string_view to_string(Loss loss);
std::string_view to_string(Method method);
Method parse_method(std::string_view text);

constexpr Loss loss_of(Method m)
{
    return (m == Method::lasso_ls || m == Method::enet_ls) ? Loss::squared : Loss::logistic;
}

constexpr bool has_ridge(Method m) { return m == Method::enet_ls || m == Method::enet_logistic; }

struct PenaltySpec {
    Loss loss = Loss::squared;
    double r = 0.0; ///< l1 level; penalty term is 2r |beta|_1
    double c = 0.0; ///< l2 level; penalty term is c |beta|_2^2

    void validate() const;
};

struct FitOptions {
    int max_iter = 100000;
    double kkt_tol = 1e-8;
    double support_tol = 1e-10;
    std::optional<Eigen::VectorXd> init;
    /// Coordinate visiting order for the squared-loss solver; empty means 0..M-1.
    std::vector<Index> order;
    /// Record the objective after every iteration in FitResult::objective_trace.
    bool record_trace = false;
};

struct FitResult {
    Eigen::VectorXd beta_hat;
    IndexSet support;
    double objective = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;
};

struct KktCoord {
    double gradient = 0.0; ///< derivative of the unpenalized empirical loss
    bool active = false;
    double violation = 0.0;
};

struct KKTReport {
    std::vector<KktCoord> per_coord;
    double max_violation = 0.0;
};

/// sign(z) max(|z| - t, 0); returns exactly 0.0 inside the threshold.
double soft_threshold(double z, double t);

/// (1/n) sum_i loss_i(beta).
double loss_value(const Dataset& ds, Loss loss, const Eigen::VectorXd& beta);

/// Gradient of loss_value.
Eigen::VectorXd loss_gradient(const Dataset& ds, Loss loss, const Eigen::VectorXd& beta);

/// Penalized empirical criterion.
double objective(const Dataset& ds, const PenaltySpec& spec, const Eigen::VectorXd& beta);

/// Solves the penalized problem. Squared loss uses cyclic coordinate descent
/// with exact soft-threshold updates; logistic loss uses monotone accelerated
/// proximal gradient with backtracking. Convergence means the KKT residual
/// (evaluated from the data, not from solver state) is at most kkt_tol; a
/// run that hits max_iter is returned with converged = false.
///
/// Throws LossMismatch for logistic loss on a non-binary response.
FitResult fit(const Dataset& ds, const PenaltySpec& spec, const FitOptions& opts = {});

/// Subgradient optimality report. For beta_j != 0 the violation is
/// |g_j + 2c beta_j + 2r sign(beta_j)|, for beta_j == 0 it is max(|g_j| - 2r, 0).
KKTReport kkt_check(const Dataset& ds, const Eigen::VectorXd& beta, const PenaltySpec& spec);

/// { j : |beta_j| > tol }, ascending.
IndexSet support_of(const Eigen::VectorXd& beta, double tol = 1e-10);

} // namespace sparsesel
