#pragma once

#include "ncg/fourwise.hpp"
#include "ncg/secant.hpp"
#include "ncg/tensor.hpp"

namespace ncg {

enum class RoundedMode { Unitary, Orthogonal, HermitianContraction };

struct RoundingSample {
  Eigen::VectorXcd z;  // entries in {1, -1, i, -i}
  double t = 0.0;
};

struct RoundedPair {
  Matrix A, B;
  double value = 0.0;  // |M(A, B)|
  RoundedMode mode = RoundedMode::Unitary;
};

RoundingSample draw_rounding_sample(int d, SecantSampler& sampler);

// Figure-style hyperbolic secant rounding: X_z = <X,z>/sqrt(2), polar
// X_z = U_z |X_z|, output A = U_z |X_z|^{it}, B = V_z |Y_z|^{-it}. The
// outputs are unitary regardless of input conditioning.
RoundedPair round_complex(const Tensor4& m, const VecMat& x, const VecMat& y,
                          const RoundingSample& sample);

struct BestOfResult {
  RoundedPair best;
  std::vector<double> trial_values;
};

BestOfResult round_complex_best_of(const Tensor4& m, const VecMat& x,
                                   const VecMat& y, int trials,
                                   SecantSampler& sampler);

// Explicit four-wise independent z family (see FourwiseZFamily).
FourwiseZFamily fourwise_z_family(int d);

// Deterministic variant: floors the singular values of X_z, Y_z at eps,
// enumerates z over the four-wise family and t over a uniform grid on
// [-log(1/eps), log(1/eps)], and returns the best pair found.
RoundedPair round_complex_derandomized(const Tensor4& m, const VecMat& x,
                                       const VecMat& y, double eps);

}  // namespace ncg
