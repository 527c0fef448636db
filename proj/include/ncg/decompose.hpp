#pragma once

#include "ncg/round_real.hpp"

namespace ncg {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecompositionTerm {
  cd alpha;
  Matrix A, B;  // unitary (orthogonal in real mode)
};

struct StepCertificate {
  double upper_bound = 0.0;   // relaxation bound on the step residual
  double rounded_value = 0.0; // value achieved by the rounded pair
};

struct Decomposition {
  std::vector<DecompositionTerm> terms;
  Tensor4 residual;
  std::vector<StepCertificate> certificates;
  double lower_bound = 0.0;          // LB_0, rounded bound on Opt(M)
  double residual_upper_bound = 0.0; // certified relaxation bound on Opt(E)

  // Each term contributes alpha * conj(A_ij) * B_kl entrywise, the rank-one
  // form matching M(A, B); in the real case this is alpha * A_ij * B_kl.
  Tensor4 reconstruct() const;
};

// The rank-one term tensor used by Decomposition::reconstruct.
Tensor4 rank_one_term(cd alpha, const Matrix& a, const Matrix& b, Field field);

struct DecomposeConfig {
  std::uint64_t seed = 1;
  int trials = 300;
  SolveOptions solve;
  int max_terms = 0;  // 0 = derive from the energy-decrement bound
};

// Solver failure mid-decomposition; carries the terms built so far.
class DecomposeError : public std::runtime_error {
 public:
  DecomposeError(const std::string& what, Decomposition partial_result)
      : std::runtime_error(what), partial(std::move(partial_result)) {}
  Decomposition partial;
};

// Iterative solve+round decomposition M = sum_t alpha_t (A_t (x) B_t) + E,
// stopping once the relaxation bound of the residual certifies
// Opt(E) <= eps * LB_0.
Decomposition decompose(const Tensor4& m, double eps,
                        const DecomposeConfig& config = {});

struct PtasConfig {
  std::uint64_t seed = 1;
  int certificate_trials = 300;
  SolveOptions solve;
  std::size_t feasibility_budget = 20000;  // max feasibility SDP solves
  std::size_t pair_budget = 50'000'000;    // max scored grid pairs
};

// Dense-regime estimate of Opt(M) within a (1 +- O(eps)) factor, valid when
// the rounding certificate shows Opt(M) >= kappa n ||M||_2. Exponential in
// the number of decomposition terms; guarded by explicit budgets.
double ptas_dense(const Tensor4& m, double kappa, double eps,
                  const PtasConfig& config = {});

}  // namespace ncg
