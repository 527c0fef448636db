#include "ncg/tensor.hpp"

#include <cmath>

namespace ncg {

void Tensor4::check_index(int i, int j, int k, int l) const {
  if (i < 0 || j < 0 || k < 0 || l < 0 || i >= n_ || j >= n_ || k >= n_ ||
      l >= n_)
    throw std::out_of_range("Tensor4: index out of range");
}

void Tensor4::check_value(cd v) const {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::invalid_argument("Tensor4: non-finite entry");
  if (field_ == Field::Real && v.imag() != 0.0)
    throw std::invalid_argument("Tensor4: complex entry in a real tensor");
}

void Tensor4::add(int i, int j, int k, int l, cd v) {
  check_index(i, j, k, l);
  check_value(v);
  entries_[{i, j, k, l}] += v;
}

void Tensor4::set(int i, int j, int k, int l, cd v) {
  check_index(i, j, k, l);
  check_value(v);
  if (v == cd(0.0, 0.0))
    entries_.erase({i, j, k, l});
  else
    entries_[{i, j, k, l}] = v;
}

cd Tensor4::operator()(int i, int j, int k, int l) const {
  check_index(i, j, k, l);
  auto it = entries_.find({i, j, k, l});
  return it == entries_.end() ? cd(0.0, 0.0) : it->second;
}

void Tensor4::compact(double drop_below) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (std::abs(it->second) <= drop_below)
      it = entries_.erase(it);
    else
      ++it;
  }
}

double Tensor4::frobenius() const {
  double s = 0.0;
  for (const auto& [idx, v] : entries_) s += std::norm(v);
  return std::sqrt(s);
}

bool Tensor4::is_hermitian(double tol) const {
  // M_{ijkl} = conj(M_{jilk}) for all indices.
  for (const auto& [idx, v] : entries_) {
    const cd w = (*this)(idx[1], idx[0], idx[3], idx[2]);
    if (std::abs(v - std::conj(w)) > tol) return false;
  }
  return true;
}

Tensor4 Tensor4::conjugate() const {
  Tensor4 out(n_, field_);
  for (const auto& [idx, v] : entries_)
    out.entries_[idx] = std::conj(v);
  return out;
}

Tensor4 Tensor4::scaled(cd alpha) const {
  Tensor4 out(n_, alpha.imag() == 0.0 ? field_ : Field::Complex);
  for (const auto& [idx, v] : entries_) out.entries_[idx] = alpha * v;
  return out;
}

Tensor4 Tensor4::operator-(const Tensor4& other) const {
  if (other.n_ != n_) throw std::invalid_argument("Tensor4: size mismatch");
  Tensor4 out(n_, field_ == other.field_ ? field_ : Field::Complex);
  out.entries_ = entries_;
  for (const auto& [idx, v] : other.entries_) out.entries_[idx] -= v;
  return out;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (const auto& [idx, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

Matrix VecMat::component(int r) const {
  if (r < 0 || r >= d_) throw std::out_of_range("VecMat: bad component");
  Matrix out(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(i, j) = data_(i * n_ + j, r);
  return out;
}

VecMat VecMat::from_components(const std::vector<Matrix>& comps) {
  if (comps.empty()) throw std::invalid_argument("VecMat: no components");
  const int n = static_cast<int>(comps.front().rows());
  VecMat x(n, static_cast<int>(comps.size()));
  for (int r = 0; r < x.d(); ++r) {
    if (comps[r].rows() != n || comps[r].cols() != n)
      throw std::invalid_argument("VecMat: component shape mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x.data_(i * n + j, r) = comps[r](i, j);
  }
  return x;
}

VecMat VecMat::from_matrix(const Matrix& a) {
  return from_components({a});
}

bool VecMat::is_real(double tol) const {
  for (int i = 0; i < data_.rows(); ++i)
    for (int r = 0; r < d_; ++r)
      if (std::abs(data_(i, r).imag()) > tol) return false;
  return true;
}

Matrix VecMat::contract(const Eigen::VectorXcd& z) const {
  if (z.size() != d_) throw std::invalid_argument("VecMat: z dimension");
  Eigen::VectorXcd proj = data_ * z.conjugate();
  Matrix out(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(i, j) = proj(i * n_ + j);
  return out;
}

cd evaluate(const Tensor4& m, const VecMat& x, const VecMat& y) {
  if (x.n() != m.n() || y.n() != m.n())
    throw std::invalid_argument("evaluate: tensor/variable size mismatch");
  if (x.d() != y.d())
    throw std::invalid_argument("evaluate: vector dimensions differ");
  const int n = m.n();
  cd acc(0.0, 0.0);
  for (const auto& [idx, v] : m.nonzeros()) {
    const cd ip =
        (x.data().row(idx[0] * n + idx[1]) *
         y.data().row(idx[2] * n + idx[3]).adjoint())(0, 0);
    acc += v * ip;
  }
  return acc;
}

cd evaluate_matrices(const Tensor4& m, const Matrix& a, const Matrix& b) {
  const int n = m.n();
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("evaluate_matrices: shape mismatch");
  cd acc(0.0, 0.0);
  for (const auto& [idx, v] : m.nonzeros())
    acc += v * a(idx[0], idx[1]) * std::conj(b(idx[2], idx[3]));
  return acc;
}

std::pair<Matrix, Matrix> gram_products(const VecMat& x) {
  const int n = x.n();
  Matrix row = Matrix::Zero(n, n), col = Matrix::Zero(n, n);
  // XX* = sum_r X_r X_r^* and X*X = sum_r X_r^* X_r over component matrices.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        row(i, j) += (x.data().row(i * n + k) *
                      x.data().row(j * n + k).adjoint())(0, 0);
        col(i, j) += (x.data().row(k * n + j) *
                      x.data().row(k * n + i).adjoint())(0, 0);
      }
  // Clean up the fp-level Hermiticity residue.
  row = 0.5 * (row + row.adjoint()).eval();
  col = 0.5 * (col + col.adjoint()).eval();
  return {row, col};
}

Tensor4 grothendieck_embed(const RMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("grothendieck_embed: square input required");
  const int n = static_cast<int>(a.rows());
  Tensor4 m(n, Field::Real);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) != 0.0) m.set(i, i, j, j, a(i, j));
  return m;
}

Tensor4 haagerup_instance(int n) {
  Tensor4 m(n, Field::Complex);
  for (int j = 0; j < n; ++j) m.set(0, j, j, 0, 1.0);
  return m;
}

}  // namespace ncg
