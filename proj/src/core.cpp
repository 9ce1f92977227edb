#include "sparsesel/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsesel/error.hpp"
#include "sparsesel/kernels.hpp"

namespace sparsesel {

std::string_view to_string(ResponseKind kind)
{
    return kind == ResponseKind::binary ? "binary" : "real";
}

ResponseKind parse_response_kind(std::string_view text)
{
    if (text == "binary") return ResponseKind::binary;
    if (text == "real") return ResponseKind::real;
    throw Error(Errc::invalid_argument, "unknown response kind '" + std::string(text) + "'");
}

Eigen::VectorXd Standardization::to_original(const Eigen::VectorXd& beta) const
{
    if (empty()) return beta;
    if (beta.size() != scale.size())
        throw Error(Errc::dimension_mismatch, "coefficient length does not match transform");
    return beta.cwiseQuotient(scale);
}

namespace {

double max_abs(const Eigen::MatrixXd& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

void check_response(const Eigen::VectorXd& y, Index n, ResponseKind kind)
{
    if (y.size() != n)
        throw Error(Errc::dimension_mismatch,
                    "response has " + std::to_string(y.size()) + " entries, design has " +
                        std::to_string(n) + " rows");
    if (kind == ResponseKind::binary) {
        for (Index i = 0; i < y.size(); ++i) {
            if (y(i) != 0.0 && y(i) != 1.0)
                throw Error(Errc::invalid_dataset,
                            "binary response has value " + std::to_string(y(i)) + " at row " +
                                std::to_string(i));
        }
    }
    if (!y.allFinite()) throw Error(Errc::invalid_dataset, "response contains non-finite values");
}

} // namespace

void Dataset::validate() const
{
    const Index n = x_.rows();
    if (n < 2) throw Error(Errc::invalid_dataset, "need at least two observations");
    if (x_.cols() < 1) throw Error(Errc::invalid_dataset, "need at least one predictor");
    if (!x_.allFinite()) throw Error(Errc::invalid_dataset, "design contains non-finite values");
    check_response(y_, n, kind_);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Index j = 0; j < x_.cols(); ++j) {
        const double mean = x_.col(j).sum() * inv_n;
        const double msq = x_.col(j).squaredNorm() * inv_n;
        if (std::abs(mean) > kStandardizeTol || std::abs(msq - 1.0) > kStandardizeTol)
            throw Error(Errc::invalid_dataset,
                        "column " + std::to_string(j) + " is not standardized (mean " +
                            std::to_string(mean) + ", mean square " + std::to_string(msq) + ")");
    }
    if (!(l_bound_ > 0.0)) throw Error(Errc::invalid_dataset, "l_bound must be positive");
    if (max_abs(x_) > l_bound_ * (1.0 + 1e-12))
        throw Error(Errc::invalid_dataset, "design exceeds l_bound");
    if (sigma_ && !(*sigma_ > 0.0)) throw Error(Errc::invalid_dataset, "sigma must be positive");
}

Dataset Dataset::from_standardized(Eigen::MatrixXd x, Eigen::VectorXd y, ResponseKind kind,
                                   std::optional<double> l_bound, std::optional<double> sigma)
{
    Dataset ds;
    ds.l_bound_ = l_bound.value_or(max_abs(x));
    ds.x_ = std::move(x);
    ds.y_ = std::move(y);
    ds.kind_ = kind;
    ds.sigma_ = sigma;
    ds.validate();
    return ds;
}

Dataset Dataset::with_response(Eigen::VectorXd y, ResponseKind kind,
                               std::optional<double> sigma) const
{
    Dataset ds = *this;
    check_response(y, x_.rows(), kind);
    ds.y_ = std::move(y);
    ds.kind_ = kind;
    ds.sigma_ = sigma;
    if (sigma && !(*sigma > 0.0)) throw Error(Errc::invalid_dataset, "sigma must be positive");
    return ds;
}

Dataset standardize(const Eigen::MatrixXd& raw, Eigen::VectorXd y, ResponseKind kind,
                    std::optional<double> l_bound, std::optional<double> sigma)
{
    const Index n = raw.rows();
    if (y.size() != n)
        throw Error(Errc::dimension_mismatch,
                    "response has " + std::to_string(y.size()) + " entries, design has " +
                        std::to_string(n) + " rows");
    if (n < 2) throw Error(Errc::invalid_dataset, "need at least two observations");

    const double inv_n = 1.0 / static_cast<double>(n);
    Standardization tr{Eigen::VectorXd(raw.cols()), Eigen::VectorXd(raw.cols())};
    Eigen::MatrixXd x(n, raw.cols());
    for (Index j = 0; j < raw.cols(); ++j) {
        const double mean = raw.col(j).sum() * inv_n;
        Eigen::VectorXd col = raw.col(j).array() - mean;
        // Second centring pass removes the rounding left by the first.
        col.array() -= col.sum() * inv_n;
        const double msq = col.squaredNorm() * inv_n;
        const double spread = raw.col(j).cwiseAbs().maxCoeff();
        if (!(msq > 0.0) || std::sqrt(msq) <= 1e-14 * std::max(1.0, spread))
            throw Error(Errc::constant_column, "column " + std::to_string(j) + " has zero variance");
        const double scale = std::sqrt(msq);
        x.col(j) = col / scale;
        tr.mean(j) = mean;
        tr.scale(j) = scale;
    }

    Dataset ds;
    ds.l_bound_ = l_bound.value_or(max_abs(x));
    ds.x_ = std::move(x);
    ds.y_ = std::move(y);
    ds.kind_ = kind;
    ds.sigma_ = sigma;
    ds.transform_ = std::move(tr);
    ds.validate();
    return ds;
}

GramMatrix gram(const Dataset& ds) { return GramMatrix{kernels::gram(ds.x())}; }

WeightedGram weighted_gram(const Dataset& ds, const Eigen::VectorXd& beta)
{
    if (beta.size() != ds.num_predictors())
        throw Error(Errc::dimension_mismatch, "beta length " + std::to_string(beta.size()) +
                                                  " != predictors " +
                                                  std::to_string(ds.num_predictors()));
    const Eigen::VectorXd eta = kernels::x_vec(ds.x(), beta);
    Eigen::VectorXd w(eta.size());
    for (Index i = 0; i < eta.size(); ++i) w(i) = logistic_deriv(eta(i));
    return WeightedGram{kernels::weighted_gram(ds.x(), w), std::move(w)};
}

double logistic(double z)
{
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double logistic_deriv(double z)
{
    // Symmetric in z; use the form that cannot overflow.
    const double e = std::exp(-std::abs(z));
    const double d = 1.0 + e;
    return e / (d * d);
}

double min_eigenvalue(const Eigen::MatrixXd& sym)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& sym)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

} // namespace sparsesel
