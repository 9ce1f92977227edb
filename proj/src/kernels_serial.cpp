#include "sparsesel/kernels.hpp"

#include <cmath>

namespace sparsesel::kernels::serial {

Eigen::MatrixXd gram(const Eigen::MatrixXd& x)
{
    const Eigen::Index n = x.rows();
    const Eigen::Index m = x.cols();
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) s += x(i, k) * x(i, j);
            out(k, j) = s / static_cast<double>(n);
            out(j, k) = out(k, j);
        }
    }
    return out;
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w)
{
    const Eigen::Index n = x.rows();
    const Eigen::Index m = x.cols();
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) s += w(i) * x(i, k) * x(i, j);
            out(k, j) = s / static_cast<double>(n);
            out(j, k) = out(k, j);
        }
    }
    return out;
}

Eigen::VectorXd scaled_xt_vec(const Eigen::MatrixXd& x, const Eigen::VectorXd& v)
{
    const Eigen::Index n = x.rows();
    Eigen::VectorXd out(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += x(i, j) * v(i);
        out(j) = s / static_cast<double>(n);
    }
    return out;
}

Eigen::VectorXd x_vec(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta)
{
    Eigen::VectorXd out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < x.cols(); ++j) s += x(i, j) * beta(j);
        out(i) = s;
    }
    return out;
}

Eigen::MatrixXd abs_cross(const Eigen::MatrixXd& x)
{
    const Eigen::Index n = x.rows();
    const Eigen::Index m = x.cols();
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) s += std::abs(x(i, k) * x(i, j));
            out(k, j) = s / static_cast<double>(n);
            out(j, k) = out(k, j);
        }
    }
    return out;
}

} // namespace sparsesel::kernels::serial
