#include "sparsesel/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "sparsesel/error.hpp"
#include "sparsesel/kernels.hpp"

namespace sparsesel {

std::string_view to_string(Loss loss) { return loss == Loss::squared ? "squared" : "logistic"; }

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::lasso_ls: return "lasso_ls";
    case Method::enet_ls: return "enet_ls";
    case Method::lasso_logistic: return "lasso_logistic";
    case Method::enet_logistic: return "enet_logistic";
    }
    return "unknown";
}

Method parse_method(std::string_view text)
{
    if (text == "lasso_ls") return Method::lasso_ls;
    if (text == "enet_ls") return Method::enet_ls;
    if (text == "lasso_logistic") return Method::lasso_logistic;
    if (text == "enet_logistic") return Method::enet_logistic;
    throw Error(Errc::invalid_argument, "unknown method '" + std::string(text) + "'");
}

void PenaltySpec::validate() const
{
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::invalid_argument, "r must be positive");
    if (!(c >= 0.0) || !std::isfinite(c)) throw Error(Errc::invalid_argument, "c must be nonnegative");
}

double soft_threshold(double z, double t)
{
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

namespace {

void check_dims(const Dataset& ds, const Eigen::VectorXd& beta)
{
    if (beta.size() != ds.num_predictors())
        throw Error(Errc::dimension_mismatch, "beta length " + std::to_string(beta.size()) +
                                                  " != predictors " +
                                                  std::to_string(ds.num_predictors()));
}

// log(1 + e^z) without overflow.
double log1pexp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic_value_from_eta(const Eigen::VectorXd& y, const Eigen::VectorXd& eta)
{
    double s = 0.0;
    for (Index i = 0; i < eta.size(); ++i) s += log1pexp(eta(i)) - y(i) * eta(i);
    return s / static_cast<double>(eta.size());
}

Eigen::VectorXd logistic_grad_from_eta(const Dataset& ds, const Eigen::VectorXd& eta)
{
    Eigen::VectorXd resid(eta.size());
    for (Index i = 0; i < eta.size(); ++i) resid(i) = logistic(eta(i)) - ds.y()(i);
    return kernels::scaled_xt_vec(ds.x(), resid);
}

double penalty_value(const PenaltySpec& spec, const Eigen::VectorXd& beta)
{
    return 2.0 * spec.r * beta.lpNorm<1>() + spec.c * beta.squaredNorm();
}

double kkt_violation(double grad, double beta, const PenaltySpec& spec)
{
    if (beta != 0.0) {
        const double sgn = beta > 0.0 ? 1.0 : -1.0;
        return std::abs(grad + 2.0 * spec.c * beta + 2.0 * spec.r * sgn);
    }
    return std::max(std::abs(grad) - 2.0 * spec.r, 0.0);
}

double max_kkt_violation(const Eigen::VectorXd& grad, const Eigen::VectorXd& beta,
                         const PenaltySpec& spec)
{
    double worst = 0.0;
    for (Index j = 0; j < beta.size(); ++j)
        worst = std::max(worst, kkt_violation(grad(j), beta(j), spec));
    return worst;
}

std::vector<Index> resolve_order(const FitOptions& opts, Index m)
{
    if (opts.order.empty()) {
        std::vector<Index> order(static_cast<std::size_t>(m));
        for (Index j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
        return order;
    }
    std::vector<Index> sorted = opts.order;
    std::sort(sorted.begin(), sorted.end());
    bool ok = static_cast<Index>(sorted.size()) == m;
    for (Index j = 0; ok && j < m; ++j) ok = sorted[static_cast<std::size_t>(j)] == j;
    if (!ok) throw Error(Errc::invalid_argument, "coordinate order must be a permutation of 0..M-1");
    return opts.order;
}

Eigen::VectorXd initial_point(const FitOptions& opts, Index m)
{
    if (!opts.init) return Eigen::VectorXd::Zero(m);
    if (opts.init->size() != m)
        throw Error(Errc::dimension_mismatch, "init length does not match predictors");
    return *opts.init;
}

FitResult finish(const Dataset& ds, const PenaltySpec& spec, const FitOptions& opts,
                 Eigen::VectorXd beta, int iterations, std::vector<double> trace)
{
    FitResult res;
    res.kkt_residual = kkt_check(ds, beta, spec).max_violation;
    res.converged = res.kkt_residual <= opts.kkt_tol;
    res.objective = objective(ds, spec, beta);
    res.support = support_of(beta, opts.support_tol);
    res.iterations = iterations;
    res.beta_hat = std::move(beta);
    res.objective_trace = std::move(trace);
    return res;
}

// Cyclic coordinate descent in covariance form. With G the gram matrix and
// z = X'y/n, the coordinate subproblem has the closed form
//   beta_j = soft(z_j - sum_{k != j} G_jk beta_k, r) / (G_jj + c).
FitResult fit_squared(const Dataset& ds, const PenaltySpec& spec, const FitOptions& opts)
{
    const Index m = ds.num_predictors();
    const Eigen::MatrixXd g = kernels::gram(ds.x());
    const Eigen::VectorXd z = kernels::scaled_xt_vec(ds.x(), ds.y());
    const std::vector<Index> order = resolve_order(opts, m);

    Eigen::VectorXd beta = initial_point(opts, m);
    Eigen::VectorXd gb = g * beta;
    std::vector<double> trace;
#ifndef NDEBUG
    double prev_obj = objective(ds, spec, beta);
#endif

    int iter = 0;
    while (iter < opts.max_iter) {
        ++iter;
        for (Index j : order) {
            const double old = beta(j);
            const double partial = z(j) - gb(j) + g(j, j) * old;
            const double updated = soft_threshold(partial, spec.r) / (g(j, j) + spec.c);
            if (updated != old) {
                gb.noalias() += g.col(j) * (updated - old);
                beta(j) = updated;
            }
        }
        if (opts.record_trace) trace.push_back(objective(ds, spec, beta));
#ifndef NDEBUG
        {
            const double obj = objective(ds, spec, beta);
            assert(obj <= prev_obj + 1e-10 * (1.0 + std::abs(prev_obj)));
            prev_obj = obj;
        }
#endif
        const Eigen::VectorXd grad = -2.0 * (z - gb);
        if (max_kkt_violation(grad, beta, spec) <= opts.kkt_tol) {
            if (kkt_check(ds, beta, spec).max_violation <= opts.kkt_tol) break;
            // Incremental updates drifted from the data; resynchronise.
            gb.noalias() = g * beta;
        }
    }
    return finish(ds, spec, opts, std::move(beta), iter, std::move(trace));
}

// Power iteration for the top eigenvalue of a PSD matrix; exact solve when small.
double top_eigenvalue(const Eigen::MatrixXd& g)
{
    if (g.rows() <= 400) return max_eigenvalue(g);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(g.rows()).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd w = g * v;
        const double next = v.dot(w);
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        if (std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

// Monotone FISTA with gradient restart. Step starts at 4 / lambda_max(G),
// the inverse Lipschitz constant of the logistic loss gradient, and is halved
// until the sufficient-decrease condition holds.
FitResult fit_logistic(const Dataset& ds, const PenaltySpec& spec, const FitOptions& opts)
{
    const Index m = ds.num_predictors();
    const double lmax = top_eigenvalue(kernels::gram(ds.x()));
    double step = lmax > 0.0 ? 4.0 / lmax : 1.0;

    auto prox = [&](const Eigen::VectorXd& u, double t) {
        Eigen::VectorXd out(u.size());
        const double shrink = 1.0 + 2.0 * spec.c * t;
        for (Index j = 0; j < u.size(); ++j) out(j) = soft_threshold(u(j), 2.0 * spec.r * t) / shrink;
        return out;
    };

    Eigen::VectorXd x = initial_point(opts, m);
    Eigen::VectorXd eta_x = kernels::x_vec(ds.x(), x);
    double f_x = logistic_value_from_eta(ds.y(), eta_x);
    double obj_x = f_x + penalty_value(spec, x);

    Eigen::VectorXd yv = x;
    Eigen::VectorXd eta_y = eta_x;
    double f_y = f_x;
    double momentum = 1.0;
    bool from_x = true;
    std::vector<double> trace;

    int iter = 0;
    while (iter < opts.max_iter) {
        ++iter;
        const Eigen::VectorXd grad_y = logistic_grad_from_eta(ds, eta_y);

        Eigen::VectorXd zc;
        Eigen::VectorXd eta_z;
        double f_z = 0.0;
        for (;;) {
            zc = prox(yv - step * grad_y, step);
            eta_z = kernels::x_vec(ds.x(), zc);
            f_z = logistic_value_from_eta(ds.y(), eta_z);
            const Eigen::VectorXd d = zc - yv;
            const double model = f_y + grad_y.dot(d) + d.squaredNorm() / (2.0 * step);
            if (f_z <= model + 1e-14 * (1.0 + std::abs(f_y)) || step < 1e-300) break;
            step *= 0.5;
        }
        const double obj_z = f_z + penalty_value(spec, zc);

        // A plain proximal step from x is always taken; near the optimum the
        // comparison below is decided by rounding and would otherwise stall.
        if (obj_z <= obj_x || from_x) {
            const double next_m = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
            const Eigen::VectorXd delta = zc - x;
            yv = zc + ((momentum - 1.0) / next_m) * delta;
            momentum = next_m;
            x = std::move(zc);
            eta_x = std::move(eta_z);
            f_x = f_z;
            obj_x = obj_z;
            eta_y = kernels::x_vec(ds.x(), yv);
            f_y = logistic_value_from_eta(ds.y(), eta_y);
            from_x = false;
        } else {
            // Extrapolation overshot: restart from the best point.
            momentum = 1.0;
            yv = x;
            eta_y = eta_x;
            f_y = f_x;
            from_x = true;
        }
        if (opts.record_trace) trace.push_back(obj_x);

        const Eigen::VectorXd grad_x = logistic_grad_from_eta(ds, eta_x);
        if (max_kkt_violation(grad_x, x, spec) <= opts.kkt_tol) break;
    }
    return finish(ds, spec, opts, std::move(x), iter, std::move(trace));
}

} // namespace

double loss_value(const Dataset& ds, Loss loss, const Eigen::VectorXd& beta)
{
    check_dims(ds, beta);
    const Eigen::VectorXd eta = kernels::x_vec(ds.x(), beta);
    if (loss == Loss::squared) return (ds.y() - eta).squaredNorm() / static_cast<double>(ds.n());
    return logistic_value_from_eta(ds.y(), eta);
}

Eigen::VectorXd loss_gradient(const Dataset& ds, Loss loss, const Eigen::VectorXd& beta)
{
    check_dims(ds, beta);
    const Eigen::VectorXd eta = kernels::x_vec(ds.x(), beta);
    if (loss == Loss::squared) {
        const Eigen::VectorXd resid = ds.y() - eta;
        return -2.0 * kernels::scaled_xt_vec(ds.x(), resid);
    }
    return logistic_grad_from_eta(ds, eta);
}

double objective(const Dataset& ds, const PenaltySpec& spec, const Eigen::VectorXd& beta)
{
    return loss_value(ds, spec.loss, beta) + penalty_value(spec, beta);
}

FitResult fit(const Dataset& ds, const PenaltySpec& spec, const FitOptions& opts)
{
    spec.validate();
    if (spec.loss == Loss::logistic && ds.kind() != ResponseKind::binary)
        throw Error(Errc::loss_mismatch, "logistic loss requires a binary response");
    if (opts.max_iter < 1) throw Error(Errc::invalid_argument, "max_iter must be positive");
    return spec.loss == Loss::squared ? fit_squared(ds, spec, opts) : fit_logistic(ds, spec, opts);
}

KKTReport kkt_check(const Dataset& ds, const Eigen::VectorXd& beta, const PenaltySpec& spec)
{
    check_dims(ds, beta);
    const Eigen::VectorXd grad = loss_gradient(ds, spec.loss, beta);
    KKTReport rep;
    rep.per_coord.reserve(static_cast<std::size_t>(beta.size()));
    for (Index j = 0; j < beta.size(); ++j) {
        KktCoord kc{grad(j), beta(j) != 0.0, kkt_violation(grad(j), beta(j), spec)};
        rep.max_violation = std::max(rep.max_violation, kc.violation);
        rep.per_coord.push_back(kc);
    }
    return rep;
}

IndexSet support_of(const Eigen::VectorXd& beta, double tol)
{
    IndexSet s;
    for (Index j = 0; j < beta.size(); ++j)
        if (std::abs(beta(j)) > tol) s.push_back(j);
    return s;
}

} // namespace sparsesel
