#pragma once

// Dense data-parallel kernels used by the core, solver and diagnostics code.
//
// Every kernel has a serial reference in `kernels::serial` and an OpenMP
// version in `kernels::omp`. The OpenMP versions parallelise over output
// entries only and keep the per-entry summation order of the reference, so
// both produce bit-identical results for any thread count. The reference is
// kept for tests and for the benchmark.

#include <Eigen/Dense>

namespace sparsesel::kernels {

namespace serial {

/// out(k, j) = (1/n) sum_i X(i,k) X(i,j)
Eigen::MatrixXd gram(const Eigen::MatrixXd& x);

/// out(k, j) = (1/n) sum_i w_i X(i,k) X(i,j)
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w);

/// out_j = (1/n) sum_i X(i,j) v_i
Eigen::VectorXd scaled_xt_vec(const Eigen::MatrixXd& x, const Eigen::VectorXd& v);

/// out_i = sum_j X(i,j) beta_j
Eigen::VectorXd x_vec(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta);

/// out(k, j) = (1/n) sum_i |X(i,k) X(i,j)|
Eigen::MatrixXd abs_cross(const Eigen::MatrixXd& x);

} // namespace serial

namespace omp {

Eigen::MatrixXd gram(const Eigen::MatrixXd& x);
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& w);
Eigen::VectorXd scaled_xt_vec(const Eigen::MatrixXd& x, const Eigen::VectorXd& v);
Eigen::VectorXd x_vec(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta);
Eigen::MatrixXd abs_cross(const Eigen::MatrixXd& x);

} // namespace omp

// Default entry points used by the library.
using omp::abs_cross;
using omp::gram;
using omp::scaled_xt_vec;
using omp::weighted_gram;
using omp::x_vec;

} // namespace sparsesel::kernels
