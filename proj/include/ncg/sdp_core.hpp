#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

// Standard-form conic program over a block-diagonal symmetric PSD cone:
//
//   maximize   <C, X>   s.t.   <A_i, X> = b_i,   X >= 0.
//
// Coefficient matrices are sparse symmetric COO lists; a term (blk, r, c, v)
// with r != c contributes v at (r, c) *and* at (c, r).
struct CooTerm {
  int blk;
  int r, c;
  double v;
};

struct Constraint {
  std::vector<CooTerm> terms;
  double b = 0.0;
};

struct ConicProgram {
  std::vector<int> block_sizes;
  std::vector<CooTerm> objective;
  std::vector<Constraint> constraints;

  int add_block(int size) {
    block_sizes.push_back(size);
    return static_cast<int>(block_sizes.size()) - 1;
  }
};

struct IpmOptions {
  double tol = 1e-9;
  int max_iterations = 200;
  bool verbose = false;
};

struct IpmResult {
  bool converged = false;
  int iterations = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  std::vector<Eigen::MatrixXd> X;  // primal blocks
  std::vector<Eigen::MatrixXd> Z;  // dual slack blocks
  Eigen::VectorXd y;               // dual multipliers

  // b'y + max(0, -lambda_min(sum y_i A_i - C)) * trace_bound: a valid upper
  // bound on the primal optimum whenever trace_bound >= Tr(X) for all
  // feasible X.
  double certified_upper_bound(const ConicProgram& p, double trace_bound) const;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, IpmResult best)
      : std::runtime_error(what), best_result(std::move(best)) {}
  IpmResult best_result;
};

IpmResult ipm_solve(const ConicProgram& p, const IpmOptions& opt = {});

}  // namespace ncg
