#pragma once

#include "ncg/krivine.hpp"
#include "ncg/relaxation.hpp"
#include "ncg/round_complex.hpp"

namespace ncg {

// Fixed truncation level of the direct real rounding.
inline constexpr double kRealTruncation = 0.8660254037844386;  // sqrt(3)/2

// Hermitian rounding: complex rounding, phase alignment so M(A,B) is real,
// then Krivine's two-dimensional rounding applied to the eigenphases.
// Outputs are Hermitian with operator norm at most 1.
RoundedPair round_hermitian(const Tensor4& m, const VecMat& x, const VecMat& y,
                            double eps, SecantSampler& sampler);

// Direct real rounding: random sign projection Y_eps = <eps, Y>, singular
// values truncated at sqrt(3)/2, best-response first factor.
RoundedPair round_real_direct(const Tensor4& m, const VecMat& x,
                              const VecMat& y, Rng& rng);

// Pushes the singular-value coefficients of contractions A, B to +-1, one at
// a time, never decreasing M(., .); outputs orthogonal U, V with
// M(U, V) >= M(A, B).
std::pair<Matrix, Matrix> to_orthogonal(const Tensor4& m, const Matrix& a,
                                        const Matrix& b);

// Real tensor of side n -> Hermitian tensor of side 2n with
// M'(A, B) = M(Re A_2, Re B_2) for Hermitian A, B (A_2 the upper-right block).
Tensor4 real_to_hermitian_tensor(const Tensor4& m);

// psi((A1 A2; A3 A4)) = (A1+A1^T+A4+A4^T)/4 + i(A2-A2^T+A3^T-A3)/4, a
// norm-contraction from real 2n x 2n matrices onto Hermitian n x n ones.
Matrix psi(const Matrix& a);

// Hermitian tensor of side n -> real tensor of side 2n with
// M''(A, B) = M(psi(A), psi(B)) for all real A, B.
Tensor4 hermitian_to_real_tensor(const Tensor4& m);

enum class RealRoute { Auto, Direct, Hermitian, Both };

struct PipelineConfig {
  std::uint64_t seed = 1;
  int trials = 500;
  double eps = 0.05;       // slack used by the Hermitian/2d rounding stages
  SolveOptions solve;
  RealRoute route = RealRoute::Auto;
};

struct PipelineResult {
  RoundedPair pair;
  double upper_bound = 0.0;  // certified relaxation bound
};

// Full real pipeline: route (a) Hermitian lift / round / re-extract, and/or
// route (b) direct real rounding; both end with to_orthogonal. Returns the
// better pair (U, V in O_n).
PipelineResult approximate_opt_real(const Tensor4& m,
                                    const PipelineConfig& config);

// Full complex pipeline: unitary relaxation plus best-of secant rounding.
PipelineResult approximate_opt_complex(const Tensor4& m,
                                       const PipelineConfig& config);

}  // namespace ncg
