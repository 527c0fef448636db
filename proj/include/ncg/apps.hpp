#pragma once

#include <map>

#include "ncg/round_real.hpp"

namespace ncg {

// Bilinear form over direct sums of rectangular matrix blocks:
//   f((A_i), (B_j)) = sum alpha_{irs,juv} (A_i)_{rs} (B_j)_{uv}.
struct BilinearForm {
  std::vector<std::pair<int, int>> left_shapes;   // (m_i, n_i)
  std::vector<std::pair<int, int>> right_shapes;  // (p_j, q_j)
  // key = (i, r, s, j, u, v)
  std::map<std::array<int, 6>, double> coeffs;

  void add(int i, int r, int s, int j, int u, int v, double alpha);
  double evaluate(const std::vector<RMatrix>& left,
                  const std::vector<RMatrix>& right) const;
};

// Index maps of the block-diagonal embedding into M_t(R).
struct BlockMaps {
  int t = 0;
  std::vector<std::pair<int, int>> left_offsets;   // (row, col) per block
  std::vector<std::pair<int, int>> right_offsets;
  std::vector<std::pair<int, int>> left_shapes;
  std::vector<std::pair<int, int>> right_shapes;
};

std::pair<Tensor4, BlockMaps> embed_bilinear(const BilinearForm& f);

// Projects U, V onto the block-diagonal images and renormalizes each block
// onto its Stiefel set by the greedy singular-coefficient push; the form
// value never decreases relative to the projected contractions.
std::pair<std::vector<RMatrix>, std::vector<RMatrix>> extract_blocks(
    const Tensor4& m, const BlockMaps& maps, const Matrix& u, const Matrix& v);

struct PointCloud {
  std::vector<Eigen::VectorXd> points;
  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

struct PcaResult {
  RMatrix basis;            // K x n, orthonormal rows
  double value = 0.0;       // objective recomputed from the basis
  double surrogate = 0.0;   // bilinear-form value achieved by the pipeline
  double upper_bound = 0.0; // relaxation bound on the surrogate
};

// R1-PCA: maximize the sum of Euclidean norms of projections onto a
// K-dimensional subspace.
PcaResult r1_pca(const PointCloud& points, int k, const PipelineConfig& config);

// L1-PCA: maximize the sum of l1 norms of the projection coefficients.
PcaResult l1_pca(const PointCloud& points, int k, const PipelineConfig& config);

struct ProcrustesInstance {
  std::vector<RMatrix> parts;  // K matrices, each d x n
};

struct ProcrustesResult {
  std::vector<RMatrix> rotations;  // K orthogonal d x d matrices
  double value = 0.0;              // || sum_k U_k A_k ||_F^2, recomputed
  double upper_bound = 0.0;
};

ProcrustesResult procrustes(const ProcrustesInstance& inst,
                            const PipelineConfig& config);

}  // namespace ncg
