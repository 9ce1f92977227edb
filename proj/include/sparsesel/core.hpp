#pragma once

// Data model: standardized designs, response kinds, and the (weighted)
// empirical gram matrices every downstream module works with.

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sparsesel {

using Index = Eigen::Index;
using IndexSet = std::vector<Index>;

enum class ResponseKind { binary, real };

std::string_view to_string(ResponseKind kind);
ResponseKind parse_response_kind(std::string_view text);

/// Tolerance for the per-column mean-zero / unit-(1/n)-norm invariants.
inline constexpr double kStandardizeTol = 1e-10;

/// Per-column affine map applied by `standardize`. A standardized coefficient
/// b_j corresponds to b_j / scale_j on the raw scale.
struct Standardization {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;

    Eigen::VectorXd to_original(const Eigen::VectorXd& beta) const;
    bool empty() const { return mean.size() == 0; }
};

/// Standardized design with response. Immutable after construction; the only
/// ways to build one are `standardize` and `Dataset::from_standardized`, both
/// of which validate the invariants.
class Dataset {
public:
    /// Wraps an already standardized design. Throws InvalidDataset when a
    /// column is not centred / unit-norm, DimensionMismatch on size errors.
    /// `l_bound` defaults to the observed max |X_ij|.
    static Dataset from_standardized(Eigen::MatrixXd x, Eigen::VectorXd y, ResponseKind kind,
                                     std::optional<double> l_bound = std::nullopt,
                                     std::optional<double> sigma = std::nullopt);

    const Eigen::MatrixXd& x() const { return x_; }
    const Eigen::VectorXd& y() const { return y_; }
    ResponseKind kind() const { return kind_; }
    double l_bound() const { return l_bound_; }
    std::optional<double> sigma() const { return sigma_; }
    const Standardization& transform() const { return transform_; }
    Index n() const { return x_.rows(); }
    Index num_predictors() const { return x_.cols(); }

    /// Same design, different response.
    Dataset with_response(Eigen::VectorXd y, ResponseKind kind,
                          std::optional<double> sigma = std::nullopt) const;

private:
    friend Dataset standardize(const Eigen::MatrixXd&, Eigen::VectorXd, ResponseKind,
                               std::optional<double>, std::optional<double>);
    Dataset() = default;
    void validate() const;

    Eigen::MatrixXd x_;
    Eigen::VectorXd y_;
    ResponseKind kind_ = ResponseKind::real;
    double l_bound_ = 0.0;
    std::optional<double> sigma_;
    Standardization transform_;
};

/// Centres each column and scales it to (1/n) sum x^2 = 1 (population
/// convention, not n-1). Records the transform for back-mapping.
///
/// Throws ConstantColumn when a column has zero variance, DimensionMismatch
/// when y.size() != rows, InvalidDataset when n < 2 or a binary response has
/// values outside {0, 1}.
Dataset standardize(const Eigen::MatrixXd& raw, Eigen::VectorXd y, ResponseKind kind,
                    std::optional<double> l_bound = std::nullopt,
                    std::optional<double> sigma = std::nullopt);

struct GramMatrix {
    Eigen::MatrixXd sigma_mat;
};

struct WeightedGram {
    Eigen::MatrixXd sigma1_mat;
    Eigen::VectorXd weights;
};

/// Entries (1/n) sum_i X_ik X_ij.
GramMatrix gram(const Dataset& ds);

/// Entries (1/n) sum_i g'(beta'X_i) X_ik X_ij with g the logistic link.
WeightedGram weighted_gram(const Dataset& ds, const Eigen::VectorXd& beta);

/// g(z) = e^z / (1 + e^z), evaluated without overflow.
double logistic(double z);

/// g'(z) = e^z / (1 + e^z)^2. Never exceeds 1/4.
double logistic_deriv(double z);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& sym);

/// Largest eigenvalue of a symmetric matrix.
double max_eigenvalue(const Eigen::MatrixXd& sym);

} // namespace sparsesel
