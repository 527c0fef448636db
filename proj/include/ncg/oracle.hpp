#pragma once

#include <functional>

#include "ncg/tensor.hpp"

namespace ncg {
namespace oracle {

// Certified-by-construction lower bounds on Opt for tiny instances: n = 1 is
// exact, n = 2 runs a grid over O_2 (rotations and reflections) refined by
// golden-section coordinate descent.
double brute_opt_real(const Tensor4& m, int grid = 180);

// max over unit phases of |M_0000 alpha conj(beta)| = |M_0000|, by grid.
double brute_opt_complex_n1(const Tensor4& m, int grid = 64);

// Exact average over all z in {1,-1,i,-i}^d of statistic(<W, z>).
Matrix exhaustive_z_expectation(const VecMat& w,
                                const std::function<Matrix(const Matrix&)>& statistic);

// Exact average over all eps in {-1,1}^d of statistic(<eps, X>).
Matrix exhaustive_sign_expectation(const VecMat& x,
                                   const std::function<Matrix(const Matrix&)>& statistic);

// Enumeration helpers for test-side expectations over small index spaces.
void for_each_z(int d, const std::function<void(const Eigen::VectorXcd&)>& fn);
void for_each_sign(int d, const std::function<void(const Eigen::VectorXcd&)>& fn);

}  // namespace oracle
}  // namespace ncg
