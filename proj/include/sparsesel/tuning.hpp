#pragma once

// Closed-form tuning parameters, ball radii, signal-strength thresholds and
// admissible coherence levels. All "r >= bound" statements are evaluated at
// equality. Logarithms are natural.

#include <optional>

#include "sparsesel/core.hpp"
#include "sparsesel/solvers.hpp"

namespace sparsesel::tuning {

/// Inputs for the l1 tuning level.
struct RRequest {
    Method method = Method::lasso_ls;
    ResponseKind kind = ResponseKind::binary; ///< squared-loss branch selector
    double n = 0;
    double num_predictors = 0;
    double delta = 0.05;
    double l_bound = 1.0;
    std::optional<double> sigma;
    /// Upper bound K on the true support size. When set, the selection-mode
    /// levels are returned: K*M replaces M for squared loss and 2M/delta
    /// replaces 1/delta for logistic loss.
    std::optional<double> k_upper;
};

/// Smallest admissible r.
///
///  squared, binary : 2 sqrt(2 ln(2M/delta) / n)
///  squared, real   : max(4 L sigma sqrt(ln(4M/delta)/n), 8 L ln(4M/delta)/n)
///  logistic        : (6 + 4 sqrt 2) L sqrt(2 ln(2 (M v n)) / n)
///                    + 2 L sqrt(2 ln(1/delta) / n) + 1 / (4 (M v n))
///
/// Throws InvalidDelta unless 0 < delta < 1, MissingSigma for squared loss
/// with a real response and no sigma.
double r_for(const RRequest& req);

/// ln 2 / 2^{(M v n) + 1} / r. Clamps to exactly 0 once the power of two
/// leaves the double range (M v n beyond about 1070).
double epsilon_tech(double n, double num_predictors, double r);

/// r / (2B): the l2 level paired with the ball statements.
double c_for(double r, double b_big);

/// 2r / B: the l2 level paired with weak-signal inclusion for logistic loss.
double c_for_selection_logistic(double r, double b_big);

/// (1 + e^{6 L D})^{-4}. Underflows to 0 once 6LD exceeds roughly 177.
double s_const(double l_bound, double d_big);

/// l1-ball radius around the truth for the given estimator.
///
///  lasso_ls       : 4 r k / b
///  enet_ls        : 4.25 r k / (b + c)
///  lasso_logistic : 4 r k / (s b) + (1 + 1/r) eps
///  enet_logistic  : 4.25 r k / (s b + c) + (1 + 1/r) eps
double ball_radius(Method method, double r, double c, double k_star, double b, double s,
                   double epsilon);

enum class Regime {
    large, ///< threshold equals the ball radius (holds under the restricted eigenvalue condition)
    weak,  ///< coherence-based thresholds: 2r, or 3.5r + (1 or 3)(1 + 1/r) eps
};

/// Minimum |beta*_j| required for inclusion of the true variables.
double signal_threshold(Method method, Regime regime, double r, double c, double k_star, double b,
                        double s, double epsilon);

/// Largest admissible coherence constant d for weak-signal selection.
///
///  lasso_ls       : 1/15
///  enet_ls        : (1 + c) / 17.5
///  lasso_logistic : s / (16 + 2 s (7 + eps))
///  enet_logistic  : (s + c) / (17 + 2 s (8 + eps))
double d_limit(Method method, double s, double c, double epsilon);

/// Cone parameter alpha of the restricted set: 3 for the lasso, 4 for the elastic net.
constexpr double cone_alpha(Method m) { return has_ridge(m) ? 4.0 : 3.0; }

/// Half-width of the box U of linear predictors around the truth:
/// 4 L r k / (s b) + L (1 + 1/r) eps.
double lidentif_radius(double l_bound, double r, double k_star, double s, double b, double epsilon);

struct TuningBundle {
    Method method = Method::lasso_ls;
    double r = 0.0;
    double c = 0.0;
    double epsilon = 0.0;
    double s = 1.0;
    double b = 1.0;
    double delta = 0.05;
    double k_upper = 1.0;
    double ball_radius = 0.0;
    double signal_threshold_large = 0.0;
    double signal_threshold_weak = 0.0;
    double d_limit = 0.0;
};

struct BundleRequest {
    RRequest r_request;
    double k_star = 1;   ///< true (or assumed) support size used in radii
    double b = 1.0;      ///< restricted eigenvalue constant
    double b_big = 1.0;  ///< bound on max |beta*_j|
    double d_big = 0.0;  ///< bound on |beta*|_1 (logistic curvature)
    /// Use 2r/B for the logistic elastic net instead of r/(2B).
    bool selection_c = false;
};

/// Evaluates every constant for one configuration. For squared-loss methods
/// epsilon is 0 and s is 1.
TuningBundle make_bundle(const BundleRequest& req);

} // namespace sparsesel::tuning
