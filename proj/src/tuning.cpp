#include "sparsesel/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparsesel/error.hpp"

namespace sparsesel::tuning {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(Errc::invalid_argument, std::string(what) + " must be positive and finite");
}

double log1pexp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double eps_term(double r, double epsilon) { return (1.0 + 1.0 / r) * epsilon; }

} // namespace

double r_for(const RRequest& req)
{
    if (!(req.delta > 0.0 && req.delta < 1.0))
        throw Error(Errc::invalid_delta, "delta must lie in (0, 1)");
    require_positive(req.n, "n");
    require_positive(req.num_predictors, "M");
    require_positive(req.l_bound, "L");
    if (req.k_upper) require_positive(*req.k_upper, "K");

    const double n = req.n;
    const double m = req.num_predictors;
    const double big_l = req.l_bound;

    if (loss_of(req.method) == Loss::squared) {
        const double m_eff = req.k_upper ? *req.k_upper * m : m;
        if (req.kind == ResponseKind::binary)
            return 2.0 * std::sqrt(2.0 * std::log(2.0 * m_eff / req.delta) / n);
        if (!req.sigma) throw Error(Errc::missing_sigma, "real response needs sigma for tuning");
        require_positive(*req.sigma, "sigma");
        const double lg = std::log(4.0 * m_eff / req.delta);
        return std::max(4.0 * big_l * *req.sigma * std::sqrt(lg / n), 8.0 * big_l * lg / n);
    }

    const double mn = std::max(m, n);
    const double conf = req.k_upper ? 2.0 * m / req.delta : 1.0 / req.delta;
    return (6.0 + 4.0 * std::numbers::sqrt2) * big_l * std::sqrt(2.0 * std::log(2.0 * mn) / n) +
           2.0 * big_l * std::sqrt(2.0 * std::log(conf) / n) + 1.0 / (4.0 * mn);
}

double epsilon_tech(double n, double num_predictors, double r)
{
    require_positive(r, "r");
    const double mn = std::max(n, num_predictors);
    // 2^-(mn+1) is zero in double precision beyond the subnormal range.
    if (mn + 1.0 > 1074.0) return 0.0;
    return std::ldexp(std::numbers::ln2, -static_cast<int>(mn + 1.0)) / r;
}

double c_for(double r, double b_big)
{
    require_positive(r, "r");
    require_positive(b_big, "B");
    return r / (2.0 * b_big);
}

double c_for_selection_logistic(double r, double b_big)
{
    require_positive(r, "r");
    require_positive(b_big, "B");
    return 2.0 * r / b_big;
}

double s_const(double l_bound, double d_big)
{
    require_positive(l_bound, "L");
    if (!(d_big >= 0.0)) throw Error(Errc::invalid_argument, "D must be nonnegative");
    return std::exp(-4.0 * log1pexp(6.0 * l_bound * d_big));
}

double ball_radius(Method method, double r, double c, double k_star, double b, double s,
                   double epsilon)
{
    require_positive(r, "r");
    require_positive(b, "b");
    switch (method) {
    case Method::lasso_ls: return 4.0 * r * k_star / b;
    case Method::enet_ls: return 4.25 * r * k_star / (b + c);
    case Method::lasso_logistic: return 4.0 * r * k_star / (s * b) + eps_term(r, epsilon);
    case Method::enet_logistic: return 4.25 * r * k_star / (s * b + c) + eps_term(r, epsilon);
    }
    return 0.0;
}

double signal_threshold(Method method, Regime regime, double r, double c, double k_star, double b,
                        double s, double epsilon)
{
    if (regime == Regime::large) return ball_radius(method, r, c, k_star, b, s, epsilon);
    require_positive(r, "r");
    switch (method) {
    case Method::lasso_ls:
    case Method::enet_ls: return 2.0 * r;
    case Method::lasso_logistic: return 3.5 * r + 3.0 * eps_term(r, epsilon);
    case Method::enet_logistic: return 3.5 * r + eps_term(r, epsilon);
    }
    return 0.0;
}

double d_limit(Method method, double s, double c, double epsilon)
{
    switch (method) {
    case Method::lasso_ls: return 1.0 / 15.0;
    case Method::enet_ls: return (1.0 + c) / 17.5;
    case Method::lasso_logistic: return s / (16.0 + 2.0 * s * (7.0 + epsilon));
    case Method::enet_logistic: return (s + c) / (17.0 + 2.0 * s * (8.0 + epsilon));
    }
    return 0.0;
}

double lidentif_radius(double l_bound, double r, double k_star, double s, double b, double epsilon)
{
    require_positive(r, "r");
    return 4.0 * l_bound * r * k_star / (s * b) + l_bound * eps_term(r, epsilon);
}

TuningBundle make_bundle(const BundleRequest& req)
{
    const RRequest& rr = req.r_request;
    TuningBundle tb;
    tb.method = rr.method;
    tb.delta = rr.delta;
    tb.k_upper = rr.k_upper.value_or(rr.num_predictors);
    tb.b = req.b;
    tb.r = r_for(rr);
    if (loss_of(rr.method) == Loss::logistic) {
        tb.epsilon = epsilon_tech(rr.n, rr.num_predictors, tb.r);
        tb.s = s_const(rr.l_bound, req.d_big);
    }
    if (has_ridge(rr.method)) {
        tb.c = (req.selection_c && rr.method == Method::enet_logistic)
                   ? c_for_selection_logistic(tb.r, req.b_big)
                   : c_for(tb.r, req.b_big);
    }
    tb.ball_radius = ball_radius(rr.method, tb.r, tb.c, req.k_star, tb.b, tb.s, tb.epsilon);
    tb.signal_threshold_large =
        signal_threshold(rr.method, Regime::large, tb.r, tb.c, req.k_star, tb.b, tb.s, tb.epsilon);
    tb.signal_threshold_weak =
        signal_threshold(rr.method, Regime::weak, tb.r, tb.c, req.k_star, tb.b, tb.s, tb.epsilon);
    tb.d_limit = d_limit(rr.method, tb.s, tb.c, tb.epsilon);
    return tb;
}

} // namespace sparsesel::tuning
