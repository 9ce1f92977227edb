#pragma once

// Checks on the realized design: coherence of the true variables with the
// rest, the restricted quadratic-form lower bound on the cone
//
//   V(alpha, eps) = { v : sum_{j not in S} |v_j| <= alpha sum_{j in S} |v_j| + eps },
//
// for the plain and the logistic-weighted gram matrix, and the weighted
// coherence bound over a box of linear predictors.

#include <cstdint>
#include <optional>
#include <string_view>

#include "sparsesel/core.hpp"

namespace sparsesel::diagnostics {

struct CoherenceReport {
    double max_coherence = 0.0; ///< max over j in S, k != j of |rho_kj|
    double d_requested = 0.0;
    double threshold = 0.0; ///< d / k*
    bool passes = false;
    double margin = 0.0; ///< threshold - max_coherence
};

/// Throws EmptySupport for an empty support, InvalidArgument for d outside
/// (0, 1] or out-of-range indices.
CoherenceReport check_identif(const GramMatrix& gm, const IndexSet& support, double d);

/// 1 - d (1 + 2 alpha + eps): the restricted eigenvalue constant implied by
/// coherence level d. Throws DOutOfRange when this is not positive.
double b_from_d(double d, double alpha, double epsilon);

enum class StabilVerdict {
    certified_pass, ///< Sigma - b D is PSD (sufficient for every v)
    certified_fail, ///< an explicit v in the cone violates the bound
    not_falsified,  ///< no certificate either way
};

std::string_view to_string(StabilVerdict v);

struct StabilReport {
    double b = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    double min_eig = 0.0; ///< smallest eigenvalue of Sigma - b D
    bool sufficient_eig_ok = false;
    std::int64_t sample_count = 0;
    std::int64_t sample_violations = 0;
    double worst_slack = 0.0; ///< min over samples of v'Sv - b|v_S|^2 + eps (normalised |v_S|_2 = 1)
    std::optional<Eigen::VectorXd> witness;
    StabilVerdict verdict = StabilVerdict::not_falsified;
};

struct StabilOptions {
    double alpha = 3.0;
    double epsilon = 0.0;
    double b = 0.5;
    std::int64_t sample_count = 100000;
    std::uint64_t seed = 20080801;
    double eig_tol = 1e-10;
};

/// Eigenvalue certificate plus randomized falsification over V(alpha, eps).
/// Sample i draws from its own RNG stream, so results do not depend on the
/// number of threads.
StabilReport check_stabil(const GramMatrix& gm, const IndexSet& support, const StabilOptions& opts);

/// Same check on the logistic-weighted gram matrix.
StabilReport check_lstabil(const WeightedGram& wg, const IndexSet& support,
                           const StabilOptions& opts);

/// Single-threaded reference of the sampler, kept for tests and benchmarks.
StabilReport check_stabil_serial(const Eigen::MatrixXd& sigma, const IndexSet& support,
                                 const StabilOptions& opts);

/// Draws one vector from V(alpha, eps); exposed for tests.
Eigen::VectorXd sample_cone_vector(const Eigen::MatrixXd& sigma, const IndexSet& support,
                                   double alpha, double epsilon, std::uint64_t seed,
                                   std::uint64_t index);

struct LidentifReport {
    double center_max = 0.0;
    double adjusted_max = 0.0;
    double threshold = 0.0;
    bool passes_center = false;
    bool passes_adjusted = false;
};

/// sup|g''| for the logistic link, 1 / (6 sqrt 3).
inline constexpr double kLogisticCurvatureBound = 0.09622504486493763;

/// Weighted coherence at beta*'X_i and a first-order worst case over the box
/// of half-width `radius` around it:
///   adjusted = center + radius * sup|g''| * max_{j in S, k != j} (1/n) sum_i |X_ij X_ik|.
LidentifReport check_lidentif(const Dataset& ds, const Eigen::VectorXd& beta_star,
                              const IndexSet& support, double d, double radius);

} // namespace sparsesel::diagnostics
