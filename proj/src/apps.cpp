#include "ncg/apps.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "ncg/linalg.hpp"

namespace ncg {

void BilinearForm::add(int i, int r, int s, int j, int u, int v, double alpha) {
  if (i < 0 || i >= static_cast<int>(left_shapes.size()) || j < 0 ||
      j >= static_cast<int>(right_shapes.size()))
    throw std::out_of_range("BilinearForm: block index");
  if (r < 0 || r >= left_shapes[i].first || s < 0 || s >= left_shapes[i].second ||
      u < 0 || u >= right_shapes[j].first || v < 0 || v >= right_shapes[j].second)
    throw std::out_of_range("BilinearForm: entry index");
  coeffs[{i, r, s, j, u, v}] += alpha;
}

double BilinearForm::evaluate(const std::vector<RMatrix>& left,
                              const std::vector<RMatrix>& right) const {
  double acc = 0.0;
  for (const auto& [k, alpha] : coeffs)
    acc += alpha * left[k[0]](k[1], k[2]) * right[k[3]](k[4], k[5]);
  return acc;
}

std::pair<Tensor4, BlockMaps> embed_bilinear(const BilinearForm& f) {
  if (f.left_shapes.empty() || f.right_shapes.empty())
    throw std::invalid_argument("embed_bilinear: empty form");
  BlockMaps maps;
  maps.left_shapes = f.left_shapes;
  maps.right_shapes = f.right_shapes;
  int mrow = 0, mcol = 0, prow = 0, pcol = 0;
  for (auto [m, n] : f.left_shapes) {
    maps.left_offsets.emplace_back(mrow, mcol);
    mrow += m;
    mcol += n;
  }
  for (auto [p, q] : f.right_shapes) {
    maps.right_offsets.emplace_back(prow, pcol);
    prow += p;
    pcol += q;
  }
  maps.t = std::max({mrow, mcol, prow, pcol});
  Tensor4 m(maps.t, Field::Real);
  for (const auto& [k, alpha] : f.coeffs) {
    const auto [ro, co] = maps.left_offsets[k[0]];
    const auto [po, qo] = maps.right_offsets[k[3]];
    m.add(ro + k[1], co + k[2], po + k[4], qo + k[5], alpha);
  }
  return {m, maps};
}

namespace {

// Greedy push of a projected block onto O_{m,n}: full SVD, then each
// singular coefficient to the sign that does not decrease the embedded
// form value.
RMatrix stiefel_push(const Tensor4& m, Matrix& left_embed, Matrix& right_embed,
                     bool left_side, const RMatrix& block, int row_off,
                     int col_off) {
  const int rows = static_cast<int>(block.rows());
  const int cols = static_cast<int>(block.cols());
  Eigen::JacobiSVD<RMatrix> svd(block,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sig(std::min(rows, cols));
  sig = svd.singularValues();
  Matrix& mine = left_side ? left_embed : right_embed;
  auto rebuild = [&](const Eigen::VectorXd& s) {
    RMatrix d = RMatrix::Zero(rows, cols);
    for (int i = 0; i < s.size(); ++i) d(i, i) = s(i);
    const RMatrix blk = svd.matrixU() * d * svd.matrixV().transpose();
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        mine(row_off + r, col_off + c) = blk(r, c);
  };
  auto value = [&]() {
    return evaluate_matrices(m, left_embed, right_embed).real();
  };
  for (int i = 0; i < sig.size(); ++i) {
    const double before = value();
    Eigen::VectorXd trial = sig;
    trial(i) = 1.0;
    rebuild(trial);
    const double plus = value();
    trial(i) = -1.0;
    rebuild(trial);
    const double minus = value();
    sig(i) = plus >= minus ? 1.0 : -1.0;
    rebuild(sig);
    if (value() < before - 1e-9)
      throw std::logic_error("extract_blocks: non-monotone push");
  }
  RMatrix d = RMatrix::Zero(rows, cols);
  for (int i = 0; i < sig.size(); ++i) d(i, i) = sig(i);
  return svd.matrixU() * d * svd.matrixV().transpose();
}

}  // namespace

std::pair<std::vector<RMatrix>, std::vector<RMatrix>> extract_blocks(
    const Tensor4& m, const BlockMaps& maps, const Matrix& u, const Matrix& v) {
  const int t = maps.t;
  if (u.rows() != t || v.rows() != t)
    throw std::invalid_argument("extract_blocks: size mismatch");
  // Projection onto the block-diagonal image never changes the form value.
  Matrix left_embed = Matrix::Zero(t, t), right_embed = Matrix::Zero(t, t);
  std::vector<RMatrix> left, right;
  for (std::size_t i = 0; i < maps.left_shapes.size(); ++i) {
    const auto [rows, cols] = maps.left_shapes[i];
    const auto [ro, co] = maps.left_offsets[i];
    left.push_back(u.block(ro, co, rows, cols).real());
    left_embed.block(ro, co, rows, cols) = left.back().cast<cd>();
  }
  for (std::size_t j = 0; j < maps.right_shapes.size(); ++j) {
    const auto [rows, cols] = maps.right_shapes[j];
    const auto [ro, co] = maps.right_offsets[j];
    right.push_back(v.block(ro, co, rows, cols).real());
    right_embed.block(ro, co, rows, cols) = right.back().cast<cd>();
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto [ro, co] = maps.left_offsets[i];
    left[i] = stiefel_push(m, left_embed, right_embed, true, left[i], ro, co);
  }
  for (std::size_t j = 0; j < right.size(); ++j) {
    const auto [ro, co] = maps.right_offsets[j];
    right[j] = stiefel_push(m, left_embed, right_embed, false, right[j], ro, co);
  }
  return {left, right};
}

namespace {

PcaResult pca_common(const PointCloud& cloud, int k, bool r1,
                     const PipelineConfig& config) {
  const int n = cloud.dim();
  const int big_n = static_cast<int>(cloud.points.size());
  if (big_n == 0) throw std::invalid_argument("pca: empty point cloud");
  if (k < 1 || k > n) throw std::invalid_argument("pca: need 1 <= K <= dim");

  BilinearForm f;
  f.left_shapes = {{k, n}};
  if (r1) {
    for (int i = 0; i < big_n; ++i) f.right_shapes.emplace_back(1, k);
    for (int i = 0; i < big_n; ++i)
      for (int kk = 0; kk < k; ++kk)
        for (int j = 0; j < n; ++j) {
          const double a = cloud.points[i](j);
          if (a != 0.0) f.add(0, kk, j, i, 0, kk, a);
        }
  } else {
    for (int i = 0; i < big_n * k; ++i) f.right_shapes.emplace_back(1, 1);
    for (int i = 0; i < big_n; ++i)
      for (int kk = 0; kk < k; ++kk)
        for (int j = 0; j < n; ++j) {
          const double a = cloud.points[i](j);
          if (a != 0.0) f.add(0, kk, j, i * k + kk, 0, 0, a);
        }
  }

  auto [m, maps] = embed_bilinear(f);
  const PipelineResult pr = approximate_opt_real(m, config);
  auto [lblocks, rblocks] = extract_blocks(m, maps, pr.pair.A, pr.pair.B);

  PcaResult out;
  out.basis = lblocks[0];
  out.surrogate = f.evaluate(lblocks, rblocks);
  out.upper_bound = pr.upper_bound;
  double value = 0.0;
  for (int i = 0; i < big_n; ++i) {
    const Eigen::VectorXd proj = out.basis * cloud.points[i];
    value += r1 ? proj.norm() : proj.cwiseAbs().sum();
  }
  out.value = value;
  return out;
}

}  // namespace

PcaResult r1_pca(const PointCloud& points, int k, const PipelineConfig& config) {
  return pca_common(points, k, true, config);
}

PcaResult l1_pca(const PointCloud& points, int k, const PipelineConfig& config) {
  return pca_common(points, k, false, config);
}

ProcrustesResult procrustes(const ProcrustesInstance& inst,
                            const PipelineConfig& config) {
  const int big_k = static_cast<int>(inst.parts.size());
  if (big_k < 2) throw std::invalid_argument("procrustes: need K >= 2");
  const int d = static_cast<int>(inst.parts[0].rows());
  for (const auto& a : inst.parts)
    if (a.rows() != d || a.cols() != inst.parts[0].cols())
      throw std::invalid_argument("procrustes: shape mismatch");

  // f((U_k),(V_l)) = <sum U_k A_k, sum V_l A_l> = sum_kl Tr(U_k^T V_l G_lk)
  // with G_lk = A_l A_k^T; the doubled form reduces to the single list by
  // Cauchy-Schwarz.
  BilinearForm f;
  for (int k = 0; k < big_k; ++k) {
    f.left_shapes.emplace_back(d, d);
    f.right_shapes.emplace_back(d, d);
  }
  for (int k = 0; k < big_k; ++k)
    for (int l = 0; l < big_k; ++l) {
      const RMatrix g = inst.parts[l] * inst.parts[k].transpose();
      for (int r = 0; r < d; ++r)
        for (int u = 0; u < d; ++u)
          for (int v = 0; v < d; ++v)
            if (g(v, u) != 0.0) f.add(k, r, u, l, r, v, g(v, u));
    }

  auto [m, maps] = embed_bilinear(f);
  const PipelineResult pr = approximate_opt_real(m, config);
  auto [lblocks, rblocks] = extract_blocks(m, maps, pr.pair.A, pr.pair.B);

  auto objective = [&](const std::vector<RMatrix>& us) {
    RMatrix acc = RMatrix::Zero(d, inst.parts[0].cols());
    for (int k = 0; k < big_k; ++k) acc += us[k] * inst.parts[k];
    return acc.squaredNorm();
  };
  const double lv = objective(lblocks), rv = objective(rblocks);
  ProcrustesResult out;
  out.rotations = lv >= rv ? lblocks : rblocks;
  out.value = std::max(lv, rv);
  out.upper_bound = pr.upper_bound;
  return out;
}

}  // namespace ncg
