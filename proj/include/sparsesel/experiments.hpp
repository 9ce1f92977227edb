#pragma once

// Synthetic designs and responses, and a Monte Carlo harness that estimates
// selection and l1-ball probabilities and compares them against the
// finite-sample lower bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsesel/core.hpp"
#include "sparsesel/solvers.hpp"
#include "sparsesel/tuning.hpp"

namespace sparsesel::experiments {

struct TrueModel {
    Eigen::VectorXd beta_star;
    IndexSet support;
    Index k_star = 0;
    double b_big = 0.0; ///< max |beta*_j| over the support
    double d_big = 0.0; ///< |beta*|_1

    /// Builds the model from a coefficient vector; B and D are taken as tight.
    static TrueModel from_coefficients(Eigen::VectorXd beta);
};

enum class DesignKind { orthogonalized, equicorrelated, block };

struct DesignSpec {
    DesignKind kind = DesignKind::orthogonalized;
    double rho = 0.0;      ///< equicorrelated
    double rho_in = 0.0;   ///< block: within-block correlation
    double rho_out = 0.0;  ///< block: across-block correlation
    Index block_size = 5;
};

struct Design {
    Eigen::MatrixXd x;         ///< standardized
    double l_bound = 0.0;      ///< realized max |X_ij|
    double max_coherence = 0.0; ///< realized max off-diagonal |rho_kj| over all pairs
};

/// Generates a standardized design.
///  orthogonalized : Rademacher columns, centred and Gram-Schmidt
///                   orthogonalized, rescaled to (1/n)-norm 1; needs n > M
///  equicorrelated : sqrt(rho) F_i + sqrt(1 - rho) E_ij with Rademacher factors
///  block          : adds a per-block factor so within-block correlation is
///                   near rho_in and across-block near rho_out (rho_out <= rho_in)
/// When `l_target` is given the design is redrawn until max |X_ij| <= l_target.
/// Throws InfeasibleDesign when n <= M for orthogonalized mode or no draw
/// meets l_target.
Design gen_design(Index n, Index num_predictors, const DesignSpec& spec,
                  std::optional<double> l_target, std::uint64_t seed);

enum class NoiseModel {
    squared_real,   ///< y = X beta + sigma * Rademacher (or Gaussian)
    squared_binary, ///< y ~ Bernoulli(1/2 + X beta); the 1/2 offset is invisible to centred fits
    binary_noise,   ///< y = X beta + (B - 1/2), B ~ Bernoulli(1/2): noise of range 1
    logistic,       ///< y ~ Bernoulli(g(X beta))
};

std::string_view to_string(NoiseModel m);
NoiseModel parse_noise_model(std::string_view text);

struct ResponseModel {
    NoiseModel model = NoiseModel::binary_noise;
    double sigma = 1.0;     ///< noise standard deviation for squared_real
    bool gaussian = false;  ///< squared_real only; excluded from guarantee runs
};

/// Response kind of the generated data set.
ResponseKind data_kind(const ResponseModel& rm);

/// Response kind used to pick the squared-loss tuning branch. Binary-range
/// noise uses the Hoeffding branch even though y itself is real.
ResponseKind tuning_kind(const ResponseModel& rm);

/// Throws LinearProbOutOfRange when squared_binary probabilities leave [0, 1].
Eigen::VectorXd gen_response(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta_star,
                             const ResponseModel& rm, std::uint64_t seed);

enum class SignalKind { at_threshold, fixed };

struct SignalSpec {
    SignalKind kind = SignalKind::at_threshold;
    double value = 3.0; ///< multiplier of the threshold, or the fixed magnitude
    tuning::Regime regime = tuning::Regime::weak;
};

enum class TuningMode {
    ball,      ///< r from the l1-ball statements (1/delta or M/delta inside the log)
    selection, ///< r with the support bound K folded in
};

enum class Guarantee {
    exact_selection_ls,       ///< P(I = I*) >= 1 - 3 delta - delta/M
    exact_selection_logistic, ///< P(I = I*) >= 1 - 5 delta
    inclusion_ls,             ///< P(I* in I) >= 1 - delta - delta/M
    inclusion_logistic,       ///< P(I* in I) >= 1 - 3 delta
    ball_coverage,            ///< P(|b - b*|_1 <= radius) >= 1 - delta
    null_model,               ///< P(I = {}) >= 1 - delta when k* = 0
};

std::string_view to_string(Guarantee g);
/// Throws UnknownGuarantee.
Guarantee parse_guarantee(std::string_view text);

enum class CiMethod { normal, exact };

struct ExperimentConfig {
    Index n = 800;
    Index num_predictors = 20;
    Index k_star = 3;
    DesignSpec design;
    ResponseModel response;
    SignalSpec signal;
    double delta = 0.05;
    int replications = 500;
    std::uint64_t seed = 20080801;
    Method method = Method::lasso_ls;
    bool auto_penalty = true;
    double r = 0.0; ///< used when auto_penalty is false
    double c = 0.0; ///< used when auto_penalty is false
    TuningMode tuning_mode = TuningMode::selection;
    std::optional<double> k_upper; ///< defaults to max(k*, 1)
    /// Restricted eigenvalue constant for the radius; defaults to the value
    /// implied by the realized coherence, 1 - d (1 + 2 alpha + eps).
    std::optional<double> b;
    std::optional<double> b_big; ///< required for large-regime elastic-net signals
    std::optional<double> d_big; ///< required for large-regime logistic signals
    std::optional<double> l_target;
    Guarantee guarantee = Guarantee::exact_selection_ls;
    CiMethod ci = CiMethod::normal;

    void validate() const;
};

struct ReplicationRecord {
    int rep = 0;
    bool contains = false;
    bool contained = false;
    bool exact = false;
    bool in_ball = false;
    double l1_error = 0.0;
    bool converged = false;
    bool identif_ok = false;  ///< realized coherence within d_limit / k*
    bool lidentif_ok = false; ///< weighted coherence over the predictor box (logistic); = identif_ok otherwise
    double r = 0.0;
    double radius = 0.0;
    double threshold = 0.0;
    double coherence = 0.0;
    std::string error;
};

enum class Verdict { meets, fails, inconclusive };

std::string_view to_string(Verdict v);

struct ExperimentReport {
    int replications = 0;
    double p_contains = 0.0;
    double p_contained = 0.0;
    double p_exact = 0.0;
    double ball_coverage = 0.0;
    double mean_l1_error = 0.0;
    double ci_half_width = 0.0; ///< for the probability the guarantee is checked against
    double ci_contains = 0.0;
    double ci_contained = 0.0;
    double ci_exact = 0.0;
    double ci_ball = 0.0;
    double identif_fraction = 0.0;
    double lidentif_fraction = 0.0;
    double mean_r = 0.0;
    double mean_radius = 0.0;
    double mean_threshold = 0.0;
    int nonconverged = 0;
    int errors = 0;
    Guarantee guarantee_kind = Guarantee::exact_selection_ls;
    double guarantee = 0.0;
    double observed = 0.0; ///< the estimate compared against `guarantee`
    Verdict verdict = Verdict::inconclusive;
    std::vector<ReplicationRecord> records;
};

/// Lower bound promised by `g` at confidence level delta with M predictors.
double guarantee_value(Guarantee g, double delta, Index num_predictors);

/// Runs one replication; exposed for tests.
ReplicationRecord run_replication(const ExperimentConfig& cfg, int rep);

/// Replications run in parallel, each on its own RNG stream keyed by
/// (seed, rep); aggregation uses counts only, so the report is identical for
/// any thread count.
ExperimentReport run_mc(const ExperimentConfig& cfg);

/// Single-threaded reference of run_mc.
ExperimentReport run_mc_serial(const ExperimentConfig& cfg);

/// Half-width of a 95% interval for a proportion. `normal` uses the Wald
/// interval clipped to [0, 1]; `exact` uses Clopper-Pearson and returns the
/// upper half-width.
double ci_half_width(double p, int trials, CiMethod method);

/// meets when the point estimate reaches the bound, fails when even the upper
/// end of the interval is below it, inconclusive otherwise.
Verdict verify(double observed, double half_width, double bound);

/// Re-evaluates a report against another guarantee.
Verdict verify_guarantee(const ExperimentReport& report, Guarantee g, double delta,
                         Index num_predictors);

struct SweepPoint {
    double multiplier = 0.0;
    double p_exact = 0.0;
    double ci_half_width = 0.0;
};

/// Re-runs the experiment at each signal multiplier with the same seed.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, const std::vector<double>& multipliers);

} // namespace sparsesel::experiments
