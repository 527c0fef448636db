#include <doctest.h>

#include <map>

#include "ncg/fourwise.hpp"
#include "ncg/round_complex.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("d=1 family covers the fourth roots uniformly") {
  const FourwiseZFamily fam = fourwise_z_family(1);
  std::map<std::pair<int, int>, int> counts;
  fam.for_each([&](const Eigen::VectorXcd& z) {
    counts[{static_cast<int>(std::lround(z(0).real())),
            static_cast<int>(std::lround(z(0).imag()))}]++;
  });
  CHECK(counts.size() == 4);
  for (const auto& [key, c] : counts)
    CHECK(c == static_cast<int>(fam.size()) / 4);
}

TEST_CASE("pairwise orthogonality is exact over the family") {
  for (int d : {2, 3, 5, 8}) {
    const FourwiseZFamily fam = fourwise_z_family(d);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    fam.for_each([&](const Eigen::VectorXcd& z) {
      acc += z.conjugate() * z.transpose();
    });
    acc /= static_cast<double>(fam.size());
    CHECK((acc - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("fourth moments match the fully uniform distribution") {
  // E[conj(z_p) z_q conj(z_r) z_s] over the family equals the exhaustive
  // value for every index quadruple; d = 3 keeps both sides enumerable.
  const int d = 3;
  const FourwiseZFamily fam = fourwise_z_family(d);
  auto moment = [&](auto&& iterate, std::size_t count, int p, int q, int r,
                    int s) {
    cd acc(0.0, 0.0);
    iterate([&](const Eigen::VectorXcd& z) {
      acc += std::conj(z(p)) * z(q) * std::conj(z(r)) * z(s);
    });
    return acc / static_cast<double>(count);
  };
  std::size_t exhaustive_count = 1;
  for (int i = 0; i < d; ++i) exhaustive_count *= 4;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
          const cd family_val = moment(
              [&](auto&& fn) { fam.for_each(fn); }, fam.size(), p, q, r, s);
          cd exact(0.0, 0.0);
          static const cd roots[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
          for (std::size_t code = 0; code < exhaustive_count; ++code) {
            Eigen::VectorXcd z(d);
            std::size_t c = code;
            for (int i = 0; i < d; ++i) {
              z(i) = roots[c & 3];
              c >>= 2;
            }
            exact += std::conj(z(p)) * z(q) * std::conj(z(r)) * z(s);
          }
          exact /= static_cast<double>(exhaustive_count);
          CHECK(std::abs(family_val - exact) < 1e-12);
        }
}

TEST_CASE("family satisfies the exact fourth-moment matrix identity") {
  // Averaging (W_z W_z^*)^2 over the family must reproduce the closed form
  // that holds for uniform z, since only fourth moments enter.
  Rng rng(101);
  const int n = 2, d = 2;
  const VecMat w = test::random_vecmat(n, d, rng);
  const FourwiseZFamily fam = fourwise_z_family(d);
  Matrix acc = Matrix::Zero(n, n);
  fam.for_each([&](const Eigen::VectorXcd& z) {
    const Matrix wz = w.contract(z);
    const Matrix g = wz * wz.adjoint();
    acc += g * g;
  });
  acc /= static_cast<double>(fam.size());

  const auto [row, col] = gram_products(w);
  Matrix rhs = row * row;
  for (int r = 0; r < d; ++r) {
    const Matrix wr = w.component(r);
    rhs += wr * (col - wr.adjoint() * wr) * wr.adjoint();
  }
  CHECK((acc - rhs).cwiseAbs().maxCoeff() < 1e-10);
}
