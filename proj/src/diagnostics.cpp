#include "sparsesel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sparsesel/error.hpp"
#include "sparsesel/kernels.hpp"
#include "sparsesel/rng.hpp"

namespace sparsesel::diagnostics {

namespace {

void check_support(const IndexSet& support, Index m)
{
    if (support.empty()) throw Error(Errc::empty_support, "support must be nonempty");
    for (Index j : support)
        if (j < 0 || j >= m)
            throw Error(Errc::invalid_argument, "support index " + std::to_string(j) + " out of range");
}

std::vector<char> membership(const IndexSet& support, Index m)
{
    std::vector<char> in(static_cast<std::size_t>(m), 0);
    for (Index j : support) in[static_cast<std::size_t>(j)] = 1;
    return in;
}

double max_offdiag_touching(const Eigen::MatrixXd& a, const IndexSet& support)
{
    double worst = 0.0;
    for (Index j : support)
        for (Index k = 0; k < a.rows(); ++k)
            if (k != j) worst = std::max(worst, std::abs(a(k, j)));
    return worst;
}

struct SampleOutcome {
    bool violated = false;
    double slack = 0.0;
};

SampleOutcome evaluate(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& v,
                       const std::vector<char>& in, const StabilOptions& opts)
{
    double on_sq = 0.0;
    for (Index j = 0; j < v.size(); ++j)
        if (in[static_cast<std::size_t>(j)]) on_sq += v(j) * v(j);
    const double quad = v.dot(sigma * v);
    const double slack = quad - (opts.b * on_sq - opts.epsilon);
    // Rounding guard proportional to the size of the terms involved.
    const double guard = 1e-12 * (1.0 + v.squaredNorm());
    return {slack < -guard, on_sq > 0.0 ? slack / on_sq : slack};
}

void validate(const Eigen::MatrixXd& sigma, const IndexSet& support, const StabilOptions& opts)
{
    if (sigma.rows() != sigma.cols()) throw Error(Errc::dimension_mismatch, "matrix must be square");
    check_support(support, sigma.rows());
    if (!(opts.b > 0.0 && opts.b <= 1.0)) throw Error(Errc::invalid_argument, "b must lie in (0, 1]");
    if (!(opts.alpha > 0.0)) throw Error(Errc::invalid_argument, "alpha must be positive");
    if (!(opts.epsilon >= 0.0)) throw Error(Errc::invalid_argument, "epsilon must be nonnegative");
    if (opts.sample_count < 0) throw Error(Errc::invalid_argument, "sample_count must be nonnegative");
}

StabilReport eig_part(const Eigen::MatrixXd& sigma, const IndexSet& support, const StabilOptions& opts)
{
    StabilReport rep;
    rep.b = opts.b;
    rep.alpha = opts.alpha;
    rep.epsilon = opts.epsilon;
    rep.sample_count = opts.sample_count;
    Eigen::MatrixXd shifted = sigma;
    for (Index j : support) shifted(j, j) -= opts.b;
    rep.min_eig = min_eigenvalue(shifted);
    rep.sufficient_eig_ok = rep.min_eig >= -opts.eig_tol;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    return rep;
}

void finalize(StabilReport& rep)
{
    if (rep.sufficient_eig_ok)
        rep.verdict = StabilVerdict::certified_pass;
    else if (rep.sample_violations > 0)
        rep.verdict = StabilVerdict::certified_fail;
    else
        rep.verdict = StabilVerdict::not_falsified;
}

StabilReport run_sampler(const Eigen::MatrixXd& sigma, const IndexSet& support,
                         const StabilOptions& opts, bool parallel)
{
    validate(sigma, support, opts);
    StabilReport rep = eig_part(sigma, support, opts);
    const std::vector<char> in = membership(support, sigma.rows());

    std::int64_t violations = 0;
    std::int64_t first_bad = std::numeric_limits<std::int64_t>::max();
    double worst = std::numeric_limits<double>::infinity();

#pragma omp parallel for schedule(static) reduction(+ : violations) reduction(min : first_bad, worst) if (parallel)
    for (std::int64_t i = 0; i < opts.sample_count; ++i) {
        const Eigen::VectorXd v = sample_cone_vector(sigma, support, opts.alpha, opts.epsilon, opts.seed,
                                                     static_cast<std::uint64_t>(i));
        const SampleOutcome out = evaluate(sigma, v, in, opts);
        worst = std::min(worst, out.slack);
        if (out.violated) {
            ++violations;
            first_bad = std::min(first_bad, i);
        }
    }

    rep.sample_violations = violations;
    rep.worst_slack = worst;
    if (violations > 0)
        rep.witness = sample_cone_vector(sigma, support, opts.alpha, opts.epsilon, opts.seed,
                                         static_cast<std::uint64_t>(first_bad));
    finalize(rep);
    return rep;
}

} // namespace

std::string_view to_string(StabilVerdict v)
{
    switch (v) {
    case StabilVerdict::certified_pass: return "certified_pass";
    case StabilVerdict::certified_fail: return "certified_fail";
    case StabilVerdict::not_falsified: return "not_falsified";
    }
    return "unknown";
}

CoherenceReport check_identif(const GramMatrix& gm, const IndexSet& support, double d)
{
    check_support(support, gm.sigma_mat.rows());
    if (!(d > 0.0 && d <= 1.0)) throw Error(Errc::invalid_argument, "d must lie in (0, 1]");
    CoherenceReport rep;
    rep.max_coherence = max_offdiag_touching(gm.sigma_mat, support);
    rep.d_requested = d;
    rep.threshold = d / static_cast<double>(support.size());
    rep.margin = rep.threshold - rep.max_coherence;
    rep.passes = rep.margin >= 0.0;
    return rep;
}

double b_from_d(double d, double alpha, double epsilon)
{
    const double b = 1.0 - d * (1.0 + 2.0 * alpha + epsilon);
    if (!(d > 0.0) || !(b > 0.0))
        throw Error(Errc::d_out_of_range,
                    "d = " + std::to_string(d) + " leaves no positive b (need d < 1/(1 + 2 alpha + eps))");
    return b;
}

Eigen::VectorXd sample_cone_vector(const Eigen::MatrixXd& sigma, const IndexSet& support,
                                   double alpha, double epsilon, std::uint64_t seed,
                                   std::uint64_t index)
{
    const Index m = sigma.rows();
    Rng rng(seed, index);
    const std::vector<char> in = membership(support, m);

    // Scale only matters when eps > 0; spread it over a few decades then.
    const double scale = epsilon > 0.0 ? std::exp(6.0 * rng.uniform() - 4.0) : 1.0;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    double on_l1 = 0.0;
    for (Index j : support) {
        v(j) = scale * rng.normal();
        on_l1 += std::abs(v(j));
    }

    std::vector<Index> off;
    off.reserve(static_cast<std::size_t>(m));
    for (Index k = 0; k < m; ++k)
        if (!in[static_cast<std::size_t>(k)]) off.push_back(k);
    if (off.empty()) return v;

    // Half the draws sit on the boundary of the cone, where violations live.
    const double budget = (alpha * on_l1 + epsilon) * (rng.uniform() < 0.5 ? 1.0 : rng.uniform());
    // Random number of active off-support coordinates, chosen by partial shuffle.
    const std::size_t q =
        rng.uniform() < 0.5 ? off.size() : 1 + static_cast<std::size_t>(rng.below(off.size()));
    for (std::size_t t = 0; t < q; ++t) {
        const std::size_t pick = t + static_cast<std::size_t>(rng.below(off.size() - t));
        std::swap(off[t], off[pick]);
    }
    std::vector<double> w(q);
    double total = 0.0;
    for (std::size_t t = 0; t < q; ++t) {
        w[t] = rng.exponential();
        total += w[t];
    }
    // Adversarial signs push the cross term v_off' Sigma v_S negative.
    const bool adversarial = rng.uniform() < 0.5;
    for (std::size_t t = 0; t < q; ++t) {
        const Index k = off[t];
        double sgn = rng.rademacher();
        if (adversarial) {
            double cross = 0.0;
            for (Index j : support) cross += sigma(k, j) * v(j);
            if (cross != 0.0) sgn = cross > 0.0 ? -1.0 : 1.0;
        }
        v(k) = sgn * budget * w[t] / total;
    }
    return v;
}

StabilReport check_stabil(const GramMatrix& gm, const IndexSet& support, const StabilOptions& opts)
{
    return run_sampler(gm.sigma_mat, support, opts, true);
}

StabilReport check_lstabil(const WeightedGram& wg, const IndexSet& support,
                           const StabilOptions& opts)
{
    return run_sampler(wg.sigma1_mat, support, opts, true);
}

StabilReport check_stabil_serial(const Eigen::MatrixXd& sigma, const IndexSet& support,
                                 const StabilOptions& opts)
{
    return run_sampler(sigma, support, opts, false);
}

LidentifReport check_lidentif(const Dataset& ds, const Eigen::VectorXd& beta_star,
                              const IndexSet& support, double d, double radius)
{
    check_support(support, ds.num_predictors());
    if (!(radius >= 0.0)) throw Error(Errc::invalid_argument, "radius must be nonnegative");
    if (!(d > 0.0 && d <= 1.0)) throw Error(Errc::invalid_argument, "d must lie in (0, 1]");
    const WeightedGram wg = weighted_gram(ds, beta_star);
    LidentifReport rep;
    rep.center_max = max_offdiag_touching(wg.sigma1_mat, support);
    const double cross = max_offdiag_touching(kernels::abs_cross(ds.x()), support);
    // radius may be infinite when the curvature constant underflows; 0 * inf stays 0.
    rep.adjusted_max = rep.center_max + (radius == 0.0 ? 0.0 : radius * kLogisticCurvatureBound * cross);
    rep.threshold = d / static_cast<double>(support.size());
    rep.passes_center = rep.center_max <= rep.threshold;
    rep.passes_adjusted = rep.adjusted_max <= rep.threshold;
    return rep;
}

} // namespace sparsesel::diagnostics
