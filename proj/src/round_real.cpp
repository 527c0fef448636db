#include "ncg/round_real.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "ncg/linalg.hpp"

namespace ncg {

namespace {

void require_real(const Tensor4& m, const char* who) {
  if (!m.real_field())
    throw std::invalid_argument(std::string(who) + ": real tensor required");
}

void require_hermitian(const Tensor4& m, const char* who) {
  if (!m.is_hermitian(1e-10))
    throw std::invalid_argument(std::string(who) + ": Hermitian tensor required");
}

}  // namespace

RoundedPair round_hermitian(const Tensor4& m, const VecMat& x, const VecMat& y,
                            double eps, SecantSampler& sampler) {
  require_hermitian(m, "round_hermitian");
  RoundedPair base =
      round_complex(m, x, y, draw_rounding_sample(x.d(), sampler));
  Matrix a = base.A;
  const Matrix& b = base.B;
  cd v = evaluate_matrices(m, a, b);
  if (std::abs(v) >= 1e-14) a *= std::conj(v) / std::abs(v);

  // Unitary matrices are normal; eigenphases feed the 2d rounding.
  Eigen::ComplexEigenSolver<Matrix> ea(a), eb(b);
  const int n = m.n();
  std::vector<double> theta(n), phi(n);
  for (int j = 0; j < n; ++j) {
    theta[j] = std::arg(ea.eigenvalues()(j));
    phi[j] = std::arg(eb.eigenvalues()(j));
  }
  const int L = std::max(1, static_cast<int>(std::ceil(kKrivineTailC / eps)));
  const KrivineCoefficients k = krivine_coeffs(L);
  const TwoDimRounding r = apply_2d(k, theta, phi, draw_2d(k, sampler.rng()));

  RoundedPair out;
  out.mode = RoundedMode::HermitianContraction;
  out.A = Matrix::Zero(n, n);
  out.B = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    out.A += r.lambda[j] * ea.eigenvectors().col(j) *
             ea.eigenvectors().col(j).adjoint();
    out.B +=
        r.mu[j] * eb.eigenvectors().col(j) * eb.eigenvectors().col(j).adjoint();
  }
  out.A = 0.5 * (out.A + out.A.adjoint()).eval();
  out.B = 0.5 * (out.B + out.B.adjoint()).eval();
  out.value = std::abs(evaluate_matrices(m, out.A, out.B));
  return out;
}

RoundedPair round_real_direct(const Tensor4& m, const VecMat& x,
                              const VecMat& y, Rng& rng) {
  require_real(m, "round_real_direct");
  if (!x.is_real(1e-9) || !y.is_real(1e-9))
    throw std::invalid_argument("round_real_direct: real variables required");
  const int n = m.n(), d = y.d();
  Eigen::VectorXcd eps_vec(d);
  for (int r = 0; r < d; ++r) eps_vec(r) = rng.coin() ? 1.0 : -1.0;
  const Matrix y_eps = y.contract(eps_vec);

  Eigen::JacobiSVD<Matrix> svd(y_eps, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  for (int i = 0; i < sv.size(); ++i) sv(i) = std::min(sv(i), kRealTruncation);
  const Matrix y_trunc =
      svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();

  RoundedPair out;
  out.mode = RoundedMode::Orthogonal;
  out.A = contract_best_response(m, y_trunc).real().cast<cd>();
  out.B = (y_trunc / kRealTruncation).real().cast<cd>();
  out.value = std::abs(evaluate_matrices(m, out.A, out.B));
  return out;
}

std::pair<Matrix, Matrix> to_orthogonal(const Tensor4& m, const Matrix& a,
                                        const Matrix& b) {
  require_real(m, "to_orthogonal");
  if (!is_real(a, 1e-9) || !is_real(b, 1e-9))
    throw std::invalid_argument("to_orthogonal: real matrices required");
  if (op_norm(a) > 1.0 + 1e-8 || op_norm(b) > 1.0 + 1e-8)
    throw std::invalid_argument("to_orthogonal: operator norm exceeds 1");
  const int n = m.n();
  Eigen::JacobiSVD<Matrix> sa(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> sb(b, Eigen::ComputeFullU | Eigen::ComputeFullV);

  // mhat(i, j) = M(e_i f_i^T, g_j h_j^T); the value is the weighted sum
  // sigma^T mhat tau, linear in each coefficient.
  RMatrix mhat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix left = sa.matrixU().col(i) * sa.matrixV().col(i).adjoint();
      const Matrix right = sb.matrixU().col(j) * sb.matrixV().col(j).adjoint();
      mhat(i, j) = evaluate_matrices(m, left, right).real();
    }
  Eigen::VectorXd sigma = sa.singularValues(), tau = sb.singularValues();
  auto current = [&]() { return sigma.dot(mhat * tau); };
  for (int i = 0; i < n; ++i) {
    const double coef = mhat.row(i).dot(tau);
    const double before = current();
    sigma(i) = coef >= 0.0 ? 1.0 : -1.0;
    if (current() < before - 1e-12)
      throw std::logic_error("to_orthogonal: non-monotone step");
  }
  for (int j = 0; j < n; ++j) {
    const double coef = sigma.dot(mhat.col(j));
    const double before = current();
    tau(j) = coef >= 0.0 ? 1.0 : -1.0;
    if (current() < before - 1e-12)
      throw std::logic_error("to_orthogonal: non-monotone step");
  }
  const Matrix u = sa.matrixU() * sigma.cast<cd>().asDiagonal() *
                   sa.matrixV().adjoint();
  const Matrix v = sb.matrixU() * tau.cast<cd>().asDiagonal() *
                   sb.matrixV().adjoint();
  return {u.real().cast<cd>(), v.real().cast<cd>()};
}

Tensor4 real_to_hermitian_tensor(const Tensor4& m) {
  require_real(m, "real_to_hermitian_tensor");
  const int n = m.n();
  Tensor4 out(2 * n, Field::Complex);
  // Four symmetric placements, weight 1/4 each: picks Re A_2 out of a
  // Hermitian block matrix.
  for (const auto& [idx, val] : m.nonzeros()) {
    const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
    const cd v = val / 4.0;
    out.add(i, j + n, k, l + n, v);
    out.add(j + n, i, l + n, k, v);
    out.add(i, j + n, l + n, k, v);
    out.add(j + n, i, k, l + n, v);
  }
  return out;
}

Matrix psi(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0)
    throw std::invalid_argument("psi: even-sided square input required");
  if (!is_real(a, 1e-9)) throw std::invalid_argument("psi: real input required");
  const int n = static_cast<int>(a.rows()) / 2;
  const Matrix a1 = a.topLeftCorner(n, n), a2 = a.topRightCorner(n, n);
  const Matrix a3 = a.bottomLeftCorner(n, n), a4 = a.bottomRightCorner(n, n);
  return 0.25 * (a1 + a1.transpose() + a4 + a4.transpose()) +
         cd(0.0, 0.25) * (a2 - a2.transpose() + a3.transpose() - a3);
}

Tensor4 hermitian_to_real_tensor(const Tensor4& m) {
  require_hermitian(m, "hermitian_to_real_tensor");
  const int n = m.n();
  // psi(A)_{jk} as a linear functional of the entries of A; conjugated
  // variant for the B slot.
  struct Term {
    int r, c;
    cd w;
  };
  auto coef = [n](int j, int k, bool conj) {
    const cd im = conj ? cd(0.0, -0.25) : cd(0.0, 0.25);
    return std::vector<Term>{{j, k, 0.25},       {k, j, 0.25},
                             {j + n, k + n, 0.25}, {k + n, j + n, 0.25},
                             {j, k + n, im},       {k, j + n, -im},
                             {k + n, j, im},       {j + n, k, -im}};
  };
  Tensor4 out(2 * n, Field::Complex);
  for (const auto& [idx, v] : m.nonzeros()) {
    const auto ca = coef(idx[0], idx[1], false);
    const auto cb = coef(idx[2], idx[3], true);
    for (const auto& ta : ca)
      for (const auto& tb : cb) out.add(ta.r, ta.c, tb.r, tb.c, v * ta.w * tb.w);
  }
  // Hermiticity of m makes the construction exactly real; rebuild as a real
  // tensor, verifying the cancellation.
  Tensor4 real_out(2 * n, Field::Real);
  for (const auto& [idx, v] : out.nonzeros()) {
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, m.max_abs()))
      throw std::logic_error("hermitian_to_real_tensor: imaginary residue");
    if (v.real() != 0.0)
      real_out.add(idx[0], idx[1], idx[2], idx[3], v.real());
  }
  return real_out;
}

namespace {

// Route (a): Hermitian lift of a real tensor, Hermitian rounding, extraction
// of the upper-right block, then the orthogonal push.
PipelineResult real_route_hermitian(const Tensor4& m,
                                    const PipelineConfig& cfg) {
  const int n = m.n();
  const Tensor4 lifted = real_to_hermitian_tensor(m);
  const GramSolution sol =
      solve_relaxation(lifted, RelaxationMode::UnitaryComplex, cfg.solve);
  SecantSampler sampler(Rng::substream(cfg.seed, 0x48));
  RoundedPair best;
  bool have = false;
  for (int trial = 0; trial < std::max(1, cfg.trials); ++trial) {
    const RoundedPair h = round_hermitian(lifted, sol.X, sol.Y, cfg.eps, sampler);
    Matrix ra = h.A.topRightCorner(n, n).real().cast<cd>();
    Matrix rb = h.B.topRightCorner(n, n).real().cast<cd>();
    const double va = evaluate_matrices(m, ra, rb).real();
    if (va < 0.0) ra = -ra;
    auto [u, v] = to_orthogonal(m, ra, rb);
    const double value = std::abs(evaluate_matrices(m, u, v));
    if (!have || value > best.value) {
      best = {u, v, value, RoundedMode::Orthogonal};
      have = true;
    }
  }
  return {best, sol.upper_bound};
}

// Route (b): real relaxation plus the direct rounding.
PipelineResult real_route_direct(const Tensor4& m, const PipelineConfig& cfg) {
  const GramSolution sol =
      solve_relaxation(m, RelaxationMode::UnitaryReal, cfg.solve);
  Rng rng = Rng::substream(cfg.seed, 0x52);
  RoundedPair best;
  bool have = false;
  for (int trial = 0; trial < std::max(1, cfg.trials); ++trial) {
    const RoundedPair r = round_real_direct(m, sol.X, sol.Y, rng);
    auto [u, v] = to_orthogonal(m, r.A, r.B);
    const double value = std::abs(evaluate_matrices(m, u, v));
    if (!have || value > best.value) {
      best = {u, v, value, RoundedMode::Orthogonal};
      have = true;
    }
  }
  return {best, sol.upper_bound};
}

}  // namespace

PipelineResult approximate_opt_real(const Tensor4& m,
                                    const PipelineConfig& config) {
  require_real(m, "approximate_opt_real");
  RealRoute route = config.route;
  if (route == RealRoute::Auto)
    route = m.n() <= 4 ? RealRoute::Both : RealRoute::Direct;
  PipelineResult out;
  bool have = false;
  if (route == RealRoute::Direct || route == RealRoute::Both) {
    out = real_route_direct(m, config);
    have = true;
  }
  if (route == RealRoute::Hermitian || route == RealRoute::Both) {
    PipelineResult h = real_route_hermitian(m, config);
    if (!have || h.pair.value > out.pair.value) {
      // The real relaxation bound is the tighter certificate when both ran.
      const double ub = have ? std::min(out.upper_bound, h.upper_bound)
                             : h.upper_bound;
      out = h;
      out.upper_bound = ub;
    } else {
      out.upper_bound = std::min(out.upper_bound, h.upper_bound);
    }
  }
  return out;
}

PipelineResult approximate_opt_complex(const Tensor4& m,
                                       const PipelineConfig& config) {
  const GramSolution sol =
      solve_relaxation(m, RelaxationMode::UnitaryComplex, config.solve);
  SecantSampler sampler(Rng::substream(config.seed, 0x43));
  const BestOfResult r =
      round_complex_best_of(m, sol.X, sol.Y, std::max(1, config.trials), sampler);
  return {r.best, sol.upper_bound};
}

}  // namespace ncg
