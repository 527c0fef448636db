#pragma once

#include "ncg/sdp_core.hpp"
#include "ncg/tensor.hpp"

namespace ncg {

enum class RelaxationMode {
  UnitaryComplex,  // X, Y in U_n(C^d)
  UnitaryReal,     // X, Y in O_n(R^d)
  NcNorm,          // ||XX*|| + ||X*X|| <= 2, same for Y
};

struct SolveOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-6;
  int max_iterations = 200;
  bool verbose = false;
};

struct GramSolution {
  VecMat X, Y;
  double value = 0.0;        // |M(X,Y)|, with X phase-rotated so M(X,Y) >= 0
  double upper_bound = 0.0;  // certified dual bound on the relaxation
  RelaxationMode mode = RelaxationMode::UnitaryComplex;

  // Per-constraint infeasibility norms of the recovered pair:
  // unitary modes: {||XX*-I||, ||X*X-I||, ||YY*-I||, ||Y*Y-I||} (operator norm)
  // nc mode:       {max(0, ||XX*||+||X*X||-2), max(0, ||YY*||+||Y*Y||-2)}
  std::vector<double> residuals;
};

// Builds and solves the Gram-matrix relaxation of max |M(X,Y)| for the given
// mode, then factors the Gram matrix back into vector-valued witnesses.
GramSolution solve_relaxation(const Tensor4& m, RelaxationMode mode,
                              const SolveOptions& opt = {});

// Lemma-style exact repair: pads contractions X, Y (operator-norm Gram
// products <= 1) into exactly unitary R, S over dimension d + 2n^2 with
// M(R, S) = M(X, Y) for every tensor M. Inputs exceeding the norm bound by
// more than feas_tol raise; small excess is clipped by rescaling.
std::pair<VecMat, VecMat> embed_to_exact_unitary(const VecMat& x,
                                                 const VecMat& y,
                                                 double feas_tol = 1e-6);

// Rotates all entry vectors of the pair into an orthonormal basis of their
// joint span, shrinking d to at most 2n^2 while preserving every pairwise
// inner product.
std::pair<VecMat, VecMat> compress_pair(const VecMat& x, const VecMat& y);

// Gram feasibility residuals as listed in GramSolution::residuals.
std::vector<double> gram_residuals(const VecMat& x, const VecMat& y,
                                   RelaxationMode mode);

// Emits the symmetric-COO realification of one Hermitian coefficient entry:
// a at (r, c) (conjugate mirrored) of a complex block of side s, scaled so
// that the realified inner product reproduces Tr(A G).
void realify_entry(std::vector<CooTerm>& coo, int blk, int r, int c, cd a,
                   int s);

}  // namespace ncg
