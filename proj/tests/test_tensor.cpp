#include <doctest.h>

#include "ncg/linalg.hpp"
#include "ncg/rng.hpp"
#include "ncg/tensor.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("tensor entry validation") {
  Tensor4 m(2, Field::Real);
  CHECK_THROWS_AS(m.set(0, 0, 0, 2, 1.0), std::out_of_range);
  CHECK_THROWS_AS(m.set(-1, 0, 0, 0, 1.0), std::out_of_range);
  CHECK_THROWS_AS(m.set(0, 0, 0, 0, cd(0.0, 1.0)), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(m.set(0, 0, 0, 0, cd(inf, 0.0)), std::invalid_argument);
  m.set(0, 0, 0, 0, 2.0);
  CHECK(m(0, 0, 0, 0) == cd(2.0, 0.0));
  m.add(0, 0, 0, 0, 1.0);
  CHECK(m(0, 0, 0, 0) == cd(3.0, 0.0));
}

TEST_CASE("evaluate scalar identity case") {
  Tensor4 m(1, Field::Complex);
  m.set(0, 0, 0, 0, 1.0);
  VecMat x(1, 1), y(1, 1);
  x.data()(0, 0) = 1.0;
  y.data()(0, 0) = 1.0;
  CHECK(std::abs(evaluate(m, x, y) - cd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("evaluate is sesquilinear") {
  Rng rng(11);
  const Tensor4 m = test::random_tensor(2, rng);
  const VecMat x = test::random_vecmat(2, 3, rng);
  const VecMat y = test::random_vecmat(2, 3, rng);
  const cd alpha(0.0, 2.0), beta(0.7, -0.4);
  VecMat ax = x, by = y;
  ax.data() *= alpha;
  by.data() *= beta;
  const cd lhs = evaluate(m, ax, by);
  const cd rhs = alpha * std::conj(beta) * evaluate(m, x, y);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("evaluate shape errors") {
  Tensor4 m(2, Field::Complex);
  m.set(0, 0, 0, 0, 1.0);
  CHECK_THROWS_AS(evaluate(m, VecMat(3, 1), VecMat(3, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate(m, VecMat(2, 1), VecMat(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      evaluate_matrices(m, Matrix::Identity(3, 3), Matrix::Identity(3, 3)),
      std::invalid_argument);
}

TEST_CASE("haagerup witness reaches 2n/(n+1)") {
  for (int n : {2, 4}) {
    const Tensor4 m = haagerup_instance(n);
    VecMat x(n, n), y(n, n);
    const double w = std::sqrt(2.0 / (n + 1.0));
    for (int j = 0; j < n; ++j) {
      x.data()(0 * n + j, j) = w;  // X_{0j} = w e_j
      y.data()(j * n + 0, j) = w;  // Y_{j0} = w e_j
    }
    CHECK(std::abs(evaluate(m, x, y) - cd(2.0 * n / (n + 1.0), 0.0)) < 1e-12);
    // The witness saturates the nc feasibility constraint.
    const auto [xxs, xsx] = gram_products(x);
    CHECK(op_norm(xxs) + op_norm(xsx) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("haagerup instance at unitaries") {
  const Tensor4 m = haagerup_instance(3);
  const Matrix id = Matrix::Identity(3, 3);
  CHECK(std::abs(evaluate_matrices(m, id, id) - cd(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(evaluate_matrices(m, id, Matrix::Zero(3, 3))) == 0.0);
  CHECK(m.frobenius() == doctest::Approx(std::sqrt(3.0)));
  CHECK_FALSE(m.is_hermitian());
}

TEST_CASE("grothendieck embedding agrees with sign products") {
  RMatrix a(2, 2);
  a << 1.3, -0.2, 0.5, 2.1;
  const Tensor4 m = grothendieck_embed(a);
  CHECK(m.is_hermitian());
  for (double e1 : {-1.0, 1.0})
    for (double e2 : {-1.0, 1.0})
      for (double d1 : {-1.0, 1.0})
        for (double d2 : {-1.0, 1.0}) {
          Matrix u = Matrix::Zero(2, 2), v = Matrix::Zero(2, 2);
          u(0, 0) = e1;
          u(1, 1) = e2;
          v(0, 0) = d1;
          v(1, 1) = d2;
          double expect = 0.0;
          const double es[2] = {e1, e2}, ds[2] = {d1, d2};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) expect += a(i, j) * es[i] * ds[j];
          CHECK(evaluate_matrices(m, u, v).real() ==
                doctest::Approx(expect).epsilon(1e-14));
        }
  CHECK(grothendieck_embed(RMatrix::Zero(2, 2)).nnz() == 0);
}

TEST_CASE("gram products of a unitary with d=1") {
  Matrix u(2, 2);
  u << cd(0, 1) / std::sqrt(2.0), cd(1, 0) / std::sqrt(2.0),
      cd(-1, 0) / std::sqrt(2.0), cd(0, -1) / std::sqrt(2.0);
  REQUIRE(is_unitary(u, 1e-12));
  const auto [row, col] = gram_products(VecMat::from_matrix(u));
  CHECK((row - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((col - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gram products: trace identity, PSD, component oracle") {
  Rng rng(13);
  const VecMat x = test::random_vecmat(3, 4, rng);
  const auto [row, col] = gram_products(x);
  double sq = 0.0;
  for (int i = 0; i < 9; ++i) sq += x.data().row(i).squaredNorm();
  CHECK(row.trace().real() == doctest::Approx(sq).epsilon(1e-12));
  CHECK(col.trace().real() == doctest::Approx(sq).epsilon(1e-12));
  Matrix sum_row = Matrix::Zero(3, 3), sum_col = Matrix::Zero(3, 3);
  for (int r = 0; r < x.d(); ++r) {
    const Matrix xr = x.component(r);
    sum_row += xr * xr.adjoint();
    sum_col += xr.adjoint() * xr;
  }
  CHECK((row - sum_row).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((col - sum_col).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(row);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("evaluate decomposes over components") {
  Rng rng(17);
  const Tensor4 m = test::random_tensor(2, rng);
  const VecMat x = test::random_vecmat(2, 3, rng);
  const VecMat y = test::random_vecmat(2, 3, rng);
  cd acc(0.0, 0.0);
  for (int r = 0; r < 3; ++r)
    acc += evaluate_matrices(m, x.component(r), y.component(r));
  CHECK(std::abs(acc - evaluate(m, x, y)) < 1e-12);
}

TEST_CASE("vecmat component round trip") {
  Rng rng(19);
  const VecMat x = test::random_vecmat(2, 3, rng);
  std::vector<Matrix> comps;
  for (int r = 0; r < 3; ++r) comps.push_back(x.component(r));
  const VecMat back = VecMat::from_components(comps);
  CHECK((back.data() - x.data()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("frobenius norm basics") {
  Tensor4 zero(3, Field::Real);
  CHECK(zero.frobenius() == 0.0);
  Tensor4 unit(3, Field::Complex);
  unit.set(1, 2, 0, 1, cd(0.0, 1.0));
  CHECK(unit.frobenius() == doctest::Approx(1.0));
  CHECK(haagerup_instance(2).frobenius() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("hermitian predicate on random hermitianization") {
  Rng rng(23);
  Tensor4 m = test::random_tensor(2, rng);
  CHECK_FALSE(m.is_hermitian(1e-10));
  CHECK(test::hermitianize(m).is_hermitian(1e-12));
}
