#include "ncg/round_complex.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "ncg/linalg.hpp"

namespace ncg {

namespace {

Matrix phase_power(const Eigen::MatrixXcd& u, const Eigen::VectorXd& sv,
                   const Eigen::MatrixXcd& v, double t, double floor) {
  // U diag(max(s, floor)^{it}) V^*; zero singular values get phase 1.
  Eigen::VectorXcd ph(sv.size());
  for (int i = 0; i < sv.size(); ++i) {
    const double s = std::max(sv(i), floor);
    ph(i) = s > kSingularFloor ? std::exp(cd(0.0, t * std::log(s)))
                               : cd(1.0, 0.0);
  }
  return u * ph.asDiagonal() * v.adjoint();
}

}  // namespace

RoundingSample draw_rounding_sample(int d, SecantSampler& sampler) {
  RoundingSample s;
  s.z.resize(d);
  for (int r = 0; r < d; ++r) s.z(r) = sampler.rng().fourth_root();
  s.t = sampler.sample();
  return s;
}

RoundedPair round_complex(const Tensor4& m, const VecMat& x, const VecMat& y,
                          const RoundingSample& sample) {
  if (x.n() != m.n() || y.n() != m.n() || x.d() != y.d())
    throw std::invalid_argument("round_complex: shape mismatch");
  if (sample.z.size() != x.d())
    throw std::invalid_argument("round_complex: z dimension mismatch");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Matrix xz = inv_sqrt2 * x.contract(sample.z);
  const Matrix yz = inv_sqrt2 * y.contract(sample.z);
  Eigen::JacobiSVD<Matrix> sx(xz, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> sy(yz, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RoundedPair out;
  out.A = phase_power(sx.matrixU(), sx.singularValues(), sx.matrixV(), sample.t,
                      0.0);
  out.B = phase_power(sy.matrixU(), sy.singularValues(), sy.matrixV(),
                      -sample.t, 0.0);
  out.value = std::abs(evaluate_matrices(m, out.A, out.B));
  out.mode = RoundedMode::Unitary;
  return out;
}

BestOfResult round_complex_best_of(const Tensor4& m, const VecMat& x,
                                   const VecMat& y, int trials,
                                   SecantSampler& sampler) {
  if (trials < 1) throw std::invalid_argument("best_of: trials >= 1");
  BestOfResult res;
  res.trial_values.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    const RoundingSample s = draw_rounding_sample(x.d(), sampler);
    RoundedPair pair = round_complex(m, x, y, s);
    res.trial_values.push_back(pair.value);
    if (t == 0 || pair.value > res.best.value) res.best = std::move(pair);
  }
  return res;
}

FourwiseZFamily fourwise_z_family(int d) { return FourwiseZFamily(d); }

RoundedPair round_complex_derandomized(const Tensor4& m, const VecMat& x,
                                       const VecMat& y, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("derandomized: eps in (0, 1/2)");
  const int n = m.n(), d = x.d();
  if (y.d() != d || x.n() != n || y.n() != n)
    throw std::invalid_argument("derandomized: shape mismatch");
  const double t_max = std::log(1.0 / eps);
  const double de = static_cast<double>(d);
  const int grid = std::max<int>(
      2, static_cast<int>(std::ceil(
             std::log(1.0 / eps) * std::max(1.0 / (eps * eps), de / eps))));

  const FourwiseZFamily family(d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  double best_val = -1.0;
  std::size_t best_index = 0;
  double best_t = 0.0;

  std::vector<cd> beta(static_cast<std::size_t>(n) * n);
  std::vector<double> logs(static_cast<std::size_t>(n) * n);
  for (std::size_t zi = 0; zi < family.size(); ++zi) {
    const Eigen::VectorXcd z = family.member(zi);
    const Matrix xz = inv_sqrt2 * x.contract(z);
    const Matrix yz = inv_sqrt2 * y.contract(z);
    Eigen::JacobiSVD<Matrix> sx(xz, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::JacobiSVD<Matrix> sy(yz, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // M(A(t), B(t)) = sum_{jk} beta_jk exp(it (log s_j + log r_k)) where
    // beta_jk pairs the singular directions of X_z and Y_z.
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Matrix aj = sx.matrixU().col(j) * sx.matrixV().col(j).adjoint();
        const Matrix bk = sy.matrixU().col(k) * sy.matrixV().col(k).adjoint();
        beta[j * n + k] = evaluate_matrices(m, aj, bk);
        logs[j * n + k] = std::log(std::max(sx.singularValues()(j), eps)) +
                          std::log(std::max(sy.singularValues()(k), eps));
      }
    for (int g = 0; g < grid; ++g) {
      const double t = -t_max + 2.0 * t_max * g / (grid - 1);
      cd acc(0.0, 0.0);
      for (std::size_t q = 0; q < beta.size(); ++q)
        acc += beta[q] * std::exp(cd(0.0, t * logs[q]));
      const double v = std::abs(acc);
      if (v > best_val) {
        best_val = v;
        best_index = zi;
        best_t = t;
      }
    }
  }

  // Rebuild the winning pair.
  const Eigen::VectorXcd z = family.member(best_index);
  const Matrix xz = inv_sqrt2 * x.contract(z);
  const Matrix yz = inv_sqrt2 * y.contract(z);
  Eigen::JacobiSVD<Matrix> sx(xz, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> sy(yz, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RoundedPair out;
  out.A = phase_power(sx.matrixU(), sx.singularValues(), sx.matrixV(), best_t,
                      eps);
  out.B = phase_power(sy.matrixU(), sy.singularValues(), sy.matrixV(), -best_t,
                      eps);
  out.value = std::abs(evaluate_matrices(m, out.A, out.B));
  out.mode = RoundedMode::Unitary;
  return out;
}

}  // namespace ncg
