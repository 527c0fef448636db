#include <doctest.h>

#include "ncg/linalg.hpp"
#include "ncg/oracle.hpp"
#include "ncg/relaxation.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("ipm solves a tiny LP") {
  // max x1 + 2 x2  s.t.  x1 + x2 = 1, x >= 0  ->  2 at (0, 1).
  ConicProgram p;
  p.add_block(1);
  p.add_block(1);
  p.objective = {{0, 0, 0, 1.0}, {1, 0, 0, 2.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}, {1, 0, 0, 1.0}}, 1.0});
  const IpmResult r = ipm_solve(p);
  CHECK(r.converged);
  CHECK(r.primal_objective == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.certified_upper_bound(p, 1.0) >= 2.0 - 1e-8);
}

TEST_CASE("ipm recovers the largest eigenvalue") {
  Rng rng(71);
  const int n = 5;
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = rng.normal();
  c = ((c + c.transpose()) / 2.0).eval();
  ConicProgram p;
  p.add_block(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (c(i, j) != 0.0) p.objective.push_back({0, i, j, i == j ? c(i, i) : c(i, j)});
  Constraint trace;
  for (int i = 0; i < n; ++i) trace.terms.push_back({0, i, i, 1.0});
  trace.b = 1.0;
  p.constraints.push_back(trace);
  const IpmResult r = ipm_solve(p);
  const double lmax =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(c).eigenvalues().maxCoeff();
  CHECK(r.converged);
  CHECK(r.primal_objective == doctest::Approx(lmax).epsilon(1e-8));
  CHECK(r.certified_upper_bound(p, 1.0) >= lmax - 1e-9);
}

TEST_CASE("scalar complex relaxation is exact") {
  Tensor4 m(1, Field::Complex);
  m.set(0, 0, 0, 0, 1.0);
  const GramSolution sol = solve_relaxation(m, RelaxationMode::UnitaryComplex);
  CHECK(sol.upper_bound == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(evaluate(m, sol.X, sol.Y)) == doctest::Approx(1.0).epsilon(1e-6));
  for (double r : sol.residuals) CHECK(r <= 1e-8);
}

TEST_CASE("haagerup nc relaxation attains 2n/(n+1)") {
  const Tensor4 m = haagerup_instance(2);
  const GramSolution sol = solve_relaxation(m, RelaxationMode::NcNorm);
  CHECK(sol.upper_bound >= 4.0 / 3.0 - 1e-4);
  CHECK(sol.value == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
  for (double r : sol.residuals) CHECK(r <= 1e-8);
}

TEST_CASE("real relaxation upper-bounds the brute-force optimum") {
  Rng rng(73);
  for (int trial = 0; trial < 8; ++trial) {
    const Tensor4 m = test::random_sparse_tensor(2, 5, rng);
    if (m.nnz() == 0) continue;
    const GramSolution sol = solve_relaxation(m, RelaxationMode::UnitaryReal);
    const double brute = oracle::brute_opt_real(m);
    CHECK(sol.upper_bound >= brute - 1e-6);
    CHECK(std::abs(evaluate(m, sol.X, sol.Y)) >= sol.value - 1e-6);
    CHECK(sol.X.is_real(1e-10));
    for (double r : sol.residuals) CHECK(r <= 1e-8);
  }
}

TEST_CASE("relaxation chain: nc >= unitary >= value >= 0") {
  Rng rng(79);
  for (int trial = 0; trial < 3; ++trial) {
    const Tensor4 m = test::random_tensor(2, rng);
    const GramSolution un = solve_relaxation(m, RelaxationMode::UnitaryComplex);
    const GramSolution nc = solve_relaxation(m, RelaxationMode::NcNorm);
    CHECK(nc.upper_bound >= un.upper_bound - 1e-6);
    CHECK(un.upper_bound >= un.value - 1e-6);
    CHECK(un.value >= 0.0);
  }
}

TEST_CASE("real mode rejects complex tensors") {
  Tensor4 m(2, Field::Complex);
  m.set(0, 0, 0, 0, cd(0.0, 1.0));
  CHECK_THROWS_AS(solve_relaxation(m, RelaxationMode::UnitaryReal),
                  std::invalid_argument);
}

TEST_CASE("embed_to_exact_unitary on an exact unitary") {
  Rng rng(83);
  const Matrix u = test::random_unitary(3, rng);
  const auto [r, s] =
      embed_to_exact_unitary(VecMat::from_matrix(u), VecMat::from_matrix(u));
  const auto res = gram_residuals(r, s, RelaxationMode::UnitaryComplex);
  for (double v : res) CHECK(v <= 1e-9);
  // Padding stays zero when the input is already unitary.
  CHECK(r.data().rightCols(r.d() - 1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embed_to_exact_unitary zero input") {
  const VecMat zero(1, 1);
  const auto [r, s] = embed_to_exact_unitary(zero, zero);
  const auto res = gram_residuals(r, s, RelaxationMode::UnitaryComplex);
  for (double v : res) CHECK(v <= 1e-12);
  Tensor4 m(1, Field::Complex);
  m.set(0, 0, 0, 0, cd(2.0, -1.0));
  CHECK(std::abs(evaluate(m, r, s)) < 1e-12);
}

TEST_CASE("embed_to_exact_unitary preserves every tensor evaluation") {
  Rng rng(89);
  const int n = 2, d = 3;
  VecMat x = test::random_vecmat(n, d, rng), y = test::random_vecmat(n, d, rng);
  // Scale into strict contractions.
  auto shrink = [](VecMat& w) {
    const auto [row, col] = gram_products(w);
    w.data() /= std::sqrt(std::max({1.0, op_norm(row), op_norm(col)})) * 1.01;
  };
  shrink(x);
  shrink(y);
  const auto [r, s] = embed_to_exact_unitary(x, y);
  const auto res = gram_residuals(r, s, RelaxationMode::UnitaryComplex);
  for (double v : res) CHECK(v <= 1e-9);
  for (int t = 0; t < 20; ++t) {
    const Tensor4 m = test::random_tensor(n, rng);
    CHECK(std::abs(evaluate(m, r, s) - evaluate(m, x, y)) < 1e-9);
  }
  CHECK_THROWS_AS(embed_to_exact_unitary(x, y, -1.0), std::invalid_argument);
  VecMat big = x;
  big.data() *= 10.0;
  CHECK_THROWS_AS(embed_to_exact_unitary(big, y), std::invalid_argument);
}

TEST_CASE("compress_pair preserves inner products and shrinks d") {
  Rng rng(97);
  const VecMat x = test::random_vecmat(2, 11, rng);
  const VecMat y = test::random_vecmat(2, 11, rng);
  const auto [cx, cy] = compress_pair(x, y);
  CHECK(cx.d() <= 8);
  const Tensor4 m = test::random_tensor(2, rng);
  CHECK(std::abs(evaluate(m, cx, cy) - evaluate(m, x, y)) < 1e-10);
}
