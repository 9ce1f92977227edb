#include "sparsesel/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "sparsesel/diagnostics.hpp"
#include "sparsesel/error.hpp"
#include "sparsesel/kernels.hpp"
#include "sparsesel/rng.hpp"

namespace sparsesel::experiments {

std::string_view to_string(Guarantee g)
{
    switch (g) {
    case Guarantee::exact_selection_ls: return "exact_selection_ls";
    case Guarantee::exact_selection_logistic: return "exact_selection_logistic";
    case Guarantee::inclusion_ls: return "inclusion_ls";
    case Guarantee::inclusion_logistic: return "inclusion_logistic";
    case Guarantee::ball_coverage: return "ball_coverage";
    case Guarantee::null_model: return "null_model";
    }
    return "unknown";
}

Guarantee parse_guarantee(std::string_view text)
{
    for (Guarantee g : {Guarantee::exact_selection_ls, Guarantee::exact_selection_logistic,
                        Guarantee::inclusion_ls, Guarantee::inclusion_logistic,
                        Guarantee::ball_coverage, Guarantee::null_model})
        if (text == to_string(g)) return g;
    throw Error(Errc::unknown_guarantee, "unknown guarantee '" + std::string(text) + "'");
}

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::meets: return "meets";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

void ExperimentConfig::validate() const
{
    if (n < 2) throw Error(Errc::invalid_argument, "n must be at least 2");
    if (num_predictors < 1) throw Error(Errc::invalid_argument, "M must be positive");
    if (k_star < 0 || k_star > num_predictors) throw Error(Errc::invalid_argument, "need 0 <= k* <= M");
    if (replications < 1) throw Error(Errc::invalid_argument, "replications must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::invalid_delta, "delta must lie in (0, 1)");
    if (!(signal.value >= 0.0)) throw Error(Errc::invalid_argument, "signal value must be nonnegative");
    if (!auto_penalty && !(r > 0.0 && c >= 0.0))
        throw Error(Errc::invalid_argument, "explicit penalty needs r > 0 and c >= 0");
    if (!auto_penalty && has_ridge(method) != (c > 0.0))
        throw Error(Errc::invalid_argument, "explicit c must be positive exactly for elastic-net methods");
    if (loss_of(method) == Loss::logistic && response.model != NoiseModel::logistic)
        throw Error(Errc::loss_mismatch, "logistic methods need the logistic response model");
    if (b && !(*b > 0.0 && *b <= 1.0)) throw Error(Errc::invalid_argument, "b must lie in (0, 1]");
}

double guarantee_value(Guarantee g, double delta, Index num_predictors)
{
    const double m = static_cast<double>(num_predictors);
    switch (g) {
    case Guarantee::exact_selection_ls: return 1.0 - 3.0 * delta - delta / m;
    case Guarantee::exact_selection_logistic: return 1.0 - 5.0 * delta;
    case Guarantee::inclusion_ls: return 1.0 - delta - delta / m;
    case Guarantee::inclusion_logistic: return 1.0 - 3.0 * delta;
    case Guarantee::ball_coverage:
    case Guarantee::null_model: return 1.0 - delta;
    }
    return 0.0;
}

namespace {

double coherence_touching(const Eigen::MatrixXd& g, const IndexSet& support)
{
    double worst = 0.0;
    for (Index j : support)
        for (Index k = 0; k < g.rows(); ++k)
            if (k != j) worst = std::max(worst, std::abs(g(k, j)));
    return worst;
}

double observed_for(const ExperimentReport& rep, Guarantee g, double* hw)
{
    switch (g) {
    case Guarantee::exact_selection_ls:
    case Guarantee::exact_selection_logistic:
    case Guarantee::null_model: *hw = rep.ci_exact; return rep.p_exact;
    case Guarantee::inclusion_ls:
    case Guarantee::inclusion_logistic: *hw = rep.ci_contains; return rep.p_contains;
    case Guarantee::ball_coverage: *hw = rep.ci_ball; return rep.ball_coverage;
    }
    *hw = 0.0;
    return 0.0;
}

ExperimentReport aggregate(const ExperimentConfig& cfg, std::vector<ReplicationRecord> records)
{
    ExperimentReport rep;
    const int total = static_cast<int>(records.size());
    rep.replications = total;
    int contains = 0, contained = 0, exact = 0, ball = 0, identif = 0, lidentif = 0, ok = 0;
    double l1 = 0.0, r_sum = 0.0, radius_sum = 0.0, thr_sum = 0.0;
    for (const auto& rec : records) {
        contains += rec.contains;
        contained += rec.contained;
        exact += rec.exact;
        ball += rec.in_ball;
        identif += rec.identif_ok;
        lidentif += rec.lidentif_ok;
        if (!rec.error.empty()) {
            ++rep.errors;
            continue;
        }
        if (!rec.converged) ++rep.nonconverged;
        ++ok;
        l1 += rec.l1_error;
        r_sum += rec.r;
        radius_sum += rec.radius;
        thr_sum += rec.threshold;
    }
    const double dt = static_cast<double>(total);
    rep.p_contains = contains / dt;
    rep.p_contained = contained / dt;
    rep.p_exact = exact / dt;
    rep.ball_coverage = ball / dt;
    rep.identif_fraction = identif / dt;
    rep.lidentif_fraction = lidentif / dt;
    if (ok > 0) {
        rep.mean_l1_error = l1 / ok;
        rep.mean_r = r_sum / ok;
        rep.mean_radius = radius_sum / ok;
        rep.mean_threshold = thr_sum / ok;
    }
    rep.ci_contains = ci_half_width(rep.p_contains, total, cfg.ci);
    rep.ci_contained = ci_half_width(rep.p_contained, total, cfg.ci);
    rep.ci_exact = ci_half_width(rep.p_exact, total, cfg.ci);
    rep.ci_ball = ci_half_width(rep.ball_coverage, total, cfg.ci);
    rep.guarantee_kind = cfg.guarantee;
    rep.guarantee = guarantee_value(cfg.guarantee, cfg.delta, cfg.num_predictors);
    rep.observed = observed_for(rep, cfg.guarantee, &rep.ci_half_width);
    rep.verdict = verify(rep.observed, rep.ci_half_width, rep.guarantee);
    rep.records = std::move(records);
    return rep;
}

ExperimentReport run_impl(const ExperimentConfig& cfg, bool parallel)
{
    cfg.validate();
    std::vector<ReplicationRecord> records(static_cast<std::size_t>(cfg.replications));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int t = 0; t < cfg.replications; ++t) records[static_cast<std::size_t>(t)] = run_replication(cfg, t);
    return aggregate(cfg, std::move(records));
}

} // namespace

ReplicationRecord run_replication(const ExperimentConfig& cfg, int rep)
{
    ReplicationRecord rec;
    rec.rep = rep;
    try {
        const auto t = static_cast<std::uint64_t>(rep);
        const Design design = gen_design(cfg.n, cfg.num_predictors, cfg.design, cfg.l_target,
                                         stream_seed(cfg.seed, 2 * t));
        const Method method = cfg.method;
        const bool logistic_loss = loss_of(method) == Loss::logistic;
        const double nd = static_cast<double>(cfg.n);
        const double md = static_cast<double>(cfg.num_predictors);
        const double kd = static_cast<double>(cfg.k_star);

        IndexSet support(static_cast<std::size_t>(cfg.k_star));
        for (Index j = 0; j < cfg.k_star; ++j) support[static_cast<std::size_t>(j)] = j;

        tuning::RRequest rr;
        rr.method = method;
        rr.kind = tuning_kind(cfg.response);
        rr.n = nd;
        rr.num_predictors = md;
        rr.delta = cfg.delta;
        rr.l_bound = design.l_bound;
        if (cfg.response.model == NoiseModel::squared_real) rr.sigma = cfg.response.sigma;
        if (cfg.tuning_mode == TuningMode::selection)
            rr.k_upper = cfg.k_upper.value_or(std::max(kd, 1.0));

        const double r = cfg.auto_penalty ? tuning::r_for(rr) : cfg.r;
        const double eps = logistic_loss ? tuning::epsilon_tech(nd, md, r) : 0.0;
        const double alpha = tuning::cone_alpha(method);

        const Eigen::MatrixXd g = kernels::gram(design.x);
        rec.coherence = coherence_touching(g, support);
        double b = 1.0;
        if (cfg.b) {
            b = *cfg.b;
        } else if (cfg.k_star > 0) {
            b = 1.0 - rec.coherence * kd * (1.0 + 2.0 * alpha + eps);
            if (!(b > 0.0))
                throw Error(Errc::d_out_of_range, "realized coherence leaves no positive b; set b explicitly");
        }

        // Signal magnitude. The weak-regime thresholds depend on r and eps
        // only; the large-regime ones need B (elastic net) and D (logistic).
        const bool selection_c = cfg.tuning_mode == TuningMode::selection && method == Method::enet_logistic;
        auto ridge_for = [&](double big_b) {
            if (!has_ridge(method)) return 0.0;
            return selection_c ? tuning::c_for_selection_logistic(r, big_b) : tuning::c_for(r, big_b);
        };
        double threshold = 0.0;
        if (cfg.signal.regime == tuning::Regime::weak) {
            threshold = tuning::signal_threshold(method, tuning::Regime::weak, r, 0.0, kd, b, 1.0, eps);
        } else {
            if (has_ridge(method) && !cfg.b_big)
                throw Error(Errc::invalid_argument, "large-regime elastic-net signal needs b_big");
            if (logistic_loss && !cfg.d_big)
                throw Error(Errc::invalid_argument, "large-regime logistic signal needs d_big");
            const double c_pre = cfg.b_big ? ridge_for(*cfg.b_big) : 0.0;
            const double s_pre = logistic_loss ? tuning::s_const(design.l_bound, *cfg.d_big) : 1.0;
            threshold = tuning::signal_threshold(method, tuning::Regime::large, r, c_pre, kd, b, s_pre, eps);
        }
        rec.threshold = threshold;
        const double magnitude =
            cfg.signal.kind == SignalKind::fixed ? cfg.signal.value : cfg.signal.value * threshold;

        Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(cfg.num_predictors);
        for (std::size_t q = 0; q < support.size(); ++q)
            beta_star(support[q]) = (q % 2 == 0 ? 1.0 : -1.0) * magnitude;
        const TrueModel tm = TrueModel::from_coefficients(beta_star);

        const double big_b = cfg.b_big.value_or(tm.k_star > 0 ? tm.b_big : 1.0);
        const double big_d = cfg.d_big.value_or(tm.d_big);
        const double c = cfg.auto_penalty ? ridge_for(big_b) : cfg.c;
        const double s = logistic_loss ? tuning::s_const(design.l_bound, big_d) : 1.0;
        rec.r = r;
        rec.radius = tuning::ball_radius(method, r, c, kd, b, s, eps);

        const double d_lim = tuning::d_limit(method, s, c, eps);
        rec.identif_ok = cfg.k_star == 0 || rec.coherence <= d_lim / kd;

        const Eigen::VectorXd y = gen_response(design.x, tm.beta_star, cfg.response,
                                               stream_seed(cfg.seed, 2 * t + 1));
        std::optional<double> sigma;
        if (cfg.response.model == NoiseModel::squared_real && cfg.response.sigma > 0.0)
            sigma = cfg.response.sigma;
        const Dataset ds =
            Dataset::from_standardized(design.x, y, data_kind(cfg.response), design.l_bound, sigma);

        if (logistic_loss && cfg.k_star > 0) {
            const double radius_u = tuning::lidentif_radius(design.l_bound, r, kd, s, b, eps);
            const double d_use = std::min(d_lim, 1.0);
            rec.lidentif_ok = rec.identif_ok && d_use > 0.0 &&
                              diagnostics::check_lidentif(ds, tm.beta_star, support, d_use, radius_u)
                                  .passes_adjusted;
        } else {
            rec.lidentif_ok = rec.identif_ok;
        }

        const FitResult res = fit(ds, PenaltySpec{loss_of(method), r, c});
        rec.converged = res.converged;
        rec.l1_error = (res.beta_hat - tm.beta_star).lpNorm<1>();
        if (res.converged) {
            const IndexSet& sel = res.support;
            rec.contains = std::includes(sel.begin(), sel.end(), tm.support.begin(), tm.support.end());
            rec.contained = std::includes(tm.support.begin(), tm.support.end(), sel.begin(), sel.end());
            rec.exact = rec.contains && rec.contained;
            rec.in_ball = rec.l1_error <= rec.radius;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.contains = rec.contained = rec.exact = rec.in_ball = false;
        rec.converged = false;
    }
    return rec;
}

ExperimentReport run_mc(const ExperimentConfig& cfg) { return run_impl(cfg, true); }

ExperimentReport run_mc_serial(const ExperimentConfig& cfg) { return run_impl(cfg, false); }

double ci_half_width(double p, int trials, CiMethod method)
{
    if (trials < 1) throw Error(Errc::invalid_argument, "trials must be positive");
    if (method == CiMethod::normal) return 1.96 * std::sqrt(p * (1.0 - p) / trials);
    const auto successes = static_cast<double>(std::llround(p * trials));
    const double upper = boost::math::binomial_distribution<>::find_upper_bound_on_p(
        static_cast<double>(trials), successes, 0.025);
    return std::max(upper - p, 0.0);
}

Verdict verify(double observed, double half_width, double bound)
{
    if (observed >= bound) return Verdict::meets;
    if (observed + half_width < bound) return Verdict::fails;
    return Verdict::inconclusive;
}

Verdict verify_guarantee(const ExperimentReport& report, Guarantee g, double delta,
                         Index num_predictors)
{
    double hw = 0.0;
    const double obs = observed_for(report, g, &hw);
    return verify(obs, hw, guarantee_value(g, delta, num_predictors));
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, const std::vector<double>& multipliers)
{
    std::vector<SweepPoint> out;
    out.reserve(multipliers.size());
    for (double mult : multipliers) {
        ExperimentConfig c = cfg;
        c.signal.kind = SignalKind::at_threshold;
        c.signal.value = mult;
        const ExperimentReport rep = run_mc(c);
        out.push_back({mult, rep.p_exact, rep.ci_exact});
    }
    return out;
}

} // namespace sparsesel::experiments
