#include "ncg/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace ncg {

double op_norm(const Matrix& a) {
  return a.jacobiSvd().singularValues().maxCoeff();
}

bool is_unitary(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const Matrix d = a.adjoint() * a - Matrix::Identity(a.cols(), a.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_orthogonal(const Matrix& a, double tol) {
  return is_real(a, tol) && is_unitary(a, tol);
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_real(const Matrix& a, double tol) {
  return a.imag().cwiseAbs().maxCoeff() <= tol;
}

std::pair<Matrix, Matrix> polar(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("polar: square input");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix q = svd.matrixU() * svd.matrixV().adjoint();
  const Matrix p = svd.matrixV() * svd.singularValues().asDiagonal() *
                   svd.matrixV().adjoint();
  return {q, p};
}

Matrix unitary_power(const Matrix& p, double t) {
  if (!is_hermitian(p, 1e-9))
    throw std::invalid_argument("unitary_power: Hermitian input required");
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  const int n = static_cast<int>(p.rows());
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) {
    const double lam = es.eigenvalues()(i);
    phases(i) = lam > kSingularFloor
                    ? std::exp(cd(0.0, t * std::log(lam)))
                    : cd(1.0, 0.0);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix partial_contract(const Tensor4& m, const Matrix& b) {
  const int n = m.n();
  if (b.rows() != n || b.cols() != n)
    throw std::invalid_argument("partial_contract: shape mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [idx, v] : m.nonzeros())
    out(idx[0], idx[1]) += v * std::conj(b(idx[2], idx[3]));
  return out;
}

Matrix contract_best_response(const Tensor4& m, const Matrix& b) {
  const Matrix c = partial_contract(m, b).conjugate();
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace ncg
