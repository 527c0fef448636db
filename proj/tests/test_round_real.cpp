#include <doctest.h>

#include "ncg/linalg.hpp"
#include "ncg/oracle.hpp"
#include "ncg/round_real.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("hermitian rounding outputs hermitian contractions") {
  Rng rng(197);
  const Tensor4 mh = test::hermitianize(test::random_tensor(2, rng));
  const GramSolution sol = solve_relaxation(mh, RelaxationMode::UnitaryComplex);
  SecantSampler sampler(21);
  for (int i = 0; i < 20; ++i) {
    const RoundedPair out = round_hermitian(mh, sol.X, sol.Y, 0.05, sampler);
    CHECK(is_hermitian(out.A, 1e-9));
    CHECK(is_hermitian(out.B, 1e-9));
    CHECK(op_norm(out.A) <= 1.0 + 1e-9);
    CHECK(op_norm(out.B) <= 1.0 + 1e-9);
    CHECK(out.mode == RoundedMode::HermitianContraction);
  }
  CHECK_THROWS_AS(
      round_hermitian(test::random_tensor(2, rng), sol.X, sol.Y, 0.05, sampler),
      std::invalid_argument);
}

TEST_CASE("hermitian rounding mean clears 0.30x the bound") {
  Rng rng(199);
  const Tensor4 mh = test::hermitianize(test::random_tensor(2, rng));
  const GramSolution sol = solve_relaxation(mh, RelaxationMode::UnitaryComplex);
  SecantSampler sampler(23);
  std::vector<double> vals;
  for (int i = 0; i < 3000; ++i)
    vals.push_back(round_hermitian(mh, sol.X, sol.Y, 0.01, sampler).value);
  const auto st = test::summarize(vals);
  INFO("mean ", st.mean, " bound ", sol.upper_bound);
  CHECK(st.mean >= 0.30 * sol.upper_bound);
}

TEST_CASE("hermitian rounding on a diagonal instance beats 0.3x brute force") {
  Rng rng(211);
  RMatrix a(2, 2);
  a << 0.8, -1.1, -1.1, 0.4;  // symmetric, so the embedding is Hermitian
  const Tensor4 m = grothendieck_embed(a);
  const double brute = oracle::brute_opt_real(m);
  const GramSolution sol = solve_relaxation(m, RelaxationMode::UnitaryComplex);
  SecantSampler sampler(29);
  std::vector<double> vals;
  for (int i = 0; i < 2000; ++i)
    vals.push_back(round_hermitian(m, sol.X, sol.Y, 0.01, sampler).value);
  CHECK(test::summarize(vals).mean >= 0.3 * brute);
}

TEST_CASE("real direct rounding: feasibility of the output pair") {
  Rng rng(223);
  const Tensor4 m = test::random_tensor(2, rng, Field::Real);
  const GramSolution sol = solve_relaxation(m, RelaxationMode::UnitaryReal);
  Rng rounds(31);
  for (int i = 0; i < 20; ++i) {
    const RoundedPair out = round_real_direct(m, sol.X, sol.Y, rounds);
    CHECK(is_real(out.A, 1e-12));
    CHECK(is_real(out.B, 1e-12));
    CHECK(op_norm(out.A) <= 1.0 + 1e-9);
    CHECK(op_norm(out.B) <= 1.0 + 1e-9);
  }
  Tensor4 cx(2, Field::Complex);
  cx.set(0, 0, 0, 0, cd(0, 1));
  CHECK_THROWS_AS(round_real_direct(cx, sol.X, sol.Y, rounds),
                  std::invalid_argument);
}

TEST_CASE("real direct rounding mean clears 0.17x the bound") {
  Rng rng(227);
  const Tensor4 m = test::random_tensor(2, rng, Field::Real);
  const GramSolution sol = solve_relaxation(m, RelaxationMode::UnitaryReal);
  Rng rounds(37);
  std::vector<double> vals;
  for (int i = 0; i < 3000; ++i)
    vals.push_back(round_real_direct(m, sol.X, sol.Y, rounds).value);
  const auto st = test::summarize(vals);
  INFO("mean ", st.mean, " bound ", sol.upper_bound);
  CHECK(st.mean >= 0.17 * sol.upper_bound);
}

TEST_CASE("truncation split obeys the quadratic domination bound") {
  Rng rng(229);
  const double tau = kRealTruncation;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    RMatrix y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y(i, j) = rng.normal();
    Eigen::JacobiSVD<RMatrix> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd low = svd.singularValues(), high = svd.singularValues();
    for (int i = 0; i < n; ++i) {
      low(i) = std::min(low(i), tau);
      high(i) = high(i) - low(i);
    }
    const RMatrix y_tau =
        svd.matrixU() * low.asDiagonal() * svd.matrixV().transpose();
    const RMatrix y_hi =
        svd.matrixU() * high.asDiagonal() * svd.matrixV().transpose();
    CHECK(op_norm(y_tau.cast<cd>()) <= tau + 1e-12);
    const RMatrix lhs = y_hi * y_hi.transpose();
    const RMatrix yy = y * y.transpose();
    const RMatrix rhs = (yy * yy) / (16.0 * tau * tau);
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<RMatrix>(rhs - lhs).eigenvalues().minCoeff();
    CHECK(min_eig >= -1e-9);
  }
}

TEST_CASE("sign-projection fourth moment obeys the PSD ordering") {
  Rng rng(233);
  for (int d : {2, 3, 6}) {
    const VecMat x = test::random_vecmat(2, d, rng, true);
    const auto [row, col] = gram_products(x);
    const Matrix lhs = oracle::exhaustive_sign_expectation(x, [](const Matrix& xe) {
      const Matrix g = xe * xe.adjoint();
      return Matrix(g * g);
    });
    const Matrix rhs = row * row + 2.0 * op_norm(col) * row;
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Matrix>(rhs - lhs).eigenvalues().minCoeff();
    CHECK(min_eig >= -1e-9);
  }
}

TEST_CASE("to_orthogonal never decreases the value") {
  Rng rng(239);
  const Tensor4 m = test::random_tensor(3, rng, Field::Real);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = rng.normal();
        b(i, j) = rng.normal();
      }
    a /= std::max(1.0, op_norm(a));
    b /= std::max(1.0, op_norm(b));
    const double before = evaluate_matrices(m, a, b).real();
    const auto [u, v] = to_orthogonal(m, a, b);
    CHECK(is_orthogonal(u, 1e-9));
    CHECK(is_orthogonal(v, 1e-9));
    CHECK(evaluate_matrices(m, u, v).real() >= before - 1e-10);
  }
}

TEST_CASE("to_orthogonal keeps orthogonal inputs at least as good") {
  Rng rng(241);
  const Tensor4 m = test::random_tensor(2, rng, Field::Real);
  const RMatrix q1 = test::random_orthogonal(2, rng);
  const RMatrix q2 = test::random_orthogonal(2, rng);
  const double before =
      evaluate_matrices(m, q1.cast<cd>(), q2.cast<cd>()).real();
  const auto [u, v] = to_orthogonal(m, q1.cast<cd>(), q2.cast<cd>());
  CHECK(evaluate_matrices(m, u, v).real() >= before - 1e-10);
}

TEST_CASE("to_orthogonal from the zero pair") {
  Rng rng(251);
  const Tensor4 m = test::random_tensor(2, rng, Field::Real);
  const auto [u, v] = to_orthogonal(m, Matrix::Zero(2, 2), Matrix::Zero(2, 2));
  CHECK(is_orthogonal(u, 1e-9));
  CHECK(evaluate_matrices(m, u, v).real() >= -1e-12);
  CHECK_THROWS_AS(to_orthogonal(m, 2.0 * Matrix::Identity(2, 2),
                                Matrix::Identity(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("real pipeline is exact at n = 1") {
  Rng rng(257);
  Tensor4 m(1, Field::Real);
  m.set(0, 0, 0, 0, -1.7);
  PipelineConfig cfg;
  cfg.trials = 10;
  const PipelineResult r = approximate_opt_real(m, cfg);
  CHECK(r.pair.value == doctest::Approx(1.7).epsilon(1e-9));
  CHECK(r.upper_bound >= 1.7 - 1e-6);
}

TEST_CASE("real pipeline clears the constant on random sparse instances") {
  Rng rng(263);
  PipelineConfig cfg;
  cfg.trials = 150;
  for (int trial = 0; trial < 5; ++trial) {
    const Tensor4 m = test::random_sparse_tensor(2, 5, rng);
    if (m.nnz() == 0) continue;
    const double brute = oracle::brute_opt_real(m);
    const PipelineResult r = approximate_opt_real(m, cfg);
    CHECK(is_orthogonal(r.pair.A, 1e-8));
    CHECK(is_orthogonal(r.pair.B, 1e-8));
    CHECK(r.pair.value >= brute / (2.0 * std::sqrt(2.0)) - 1e-3);
    CHECK(r.upper_bound >= brute - 1e-6);
    CHECK(r.pair.value <= r.upper_bound + 1e-6);
  }
}

TEST_CASE("real pipeline on diagonal instances clears a third of optimum") {
  Rng rng(269);
  RMatrix a(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = rng.normal();
  const Tensor4 m = grothendieck_embed(a);
  const double brute = oracle::brute_opt_real(m);
  PipelineConfig cfg;
  cfg.trials = 200;
  const PipelineResult r = approximate_opt_real(m, cfg);
  CHECK(r.pair.value >= brute / 3.0);
}

TEST_CASE("complex pipeline is exact at n = 1") {
  Tensor4 m(1, Field::Complex);
  m.set(0, 0, 0, 0, cd(3.0, 4.0));
  PipelineConfig cfg;
  cfg.trials = 5;
  const PipelineResult r = approximate_opt_complex(m, cfg);
  CHECK(r.pair.value == doctest::Approx(5.0).epsilon(1e-7));
  CHECK(r.upper_bound == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("complex pipeline on a random instance clears 0.45x the bound") {
  Rng rng(271);
  const Tensor4 m = test::random_tensor(3, rng);
  PipelineConfig cfg;
  cfg.trials = 2000;
  const PipelineResult r = approximate_opt_complex(m, cfg);
  CHECK(r.pair.value >= 0.45 * r.upper_bound);
  CHECK(is_unitary(r.pair.A, 1e-8));
}

TEST_CASE("complex pipeline on the haagerup instance") {
  const Tensor4 m = haagerup_instance(4);
  PipelineConfig cfg;
  cfg.trials = 2000;
  const PipelineResult r = approximate_opt_complex(m, cfg);
  // Opt = 1; the bound stays below the nc value 2n/(n+1) = 1.6, so the
  // observed ratio respects the sharp factor-2 guarantee with room.
  CHECK(r.pair.value >= 0.85);
  CHECK(r.upper_bound / r.pair.value <= 2.1);
}
