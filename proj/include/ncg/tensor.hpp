#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace ncg {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

enum class Field { Real, Complex };

/// A 4-index coefficient tensor M, stored as a sparse coordinate map with a
/// lazily built dense accessor for small sides. Indices are 0-based.
class Tensor4 {
 public:
  Tensor4() : n_(0), field_(Field::Complex) {}
  Tensor4(int n, Field field) : n_(n), field_(field) {
    if (n <= 0) throw std::invalid_argument("Tensor4: side must be positive");
  }

  int n() const { return n_; }
  Field field() const { return field_; }
  bool real_field() const { return field_ == Field::Real; }

  // Accumulates into entry (i,j,k,l). Exactly cancelled entries are kept as
  // explicit zeros until compact() is called.
  void add(int i, int j, int k, int l, cd v);
  void set(int i, int j, int k, int l, cd v);
  cd operator()(int i, int j, int k, int l) const;

  const std::map<std::array<int, 4>, cd>& nonzeros() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  void compact(double drop_below = 0.0);

  double frobenius() const;
  bool is_hermitian(double tol = 1e-12) const;

  Tensor4 conjugate() const;
  Tensor4 scaled(cd alpha) const;
  Tensor4 operator-(const Tensor4& other) const;

  // Largest entry magnitude; 0 for the empty tensor.
  double max_abs() const;

 private:
  void check_index(int i, int j, int k, int l) const;
  void check_value(cd v) const;

  int n_;
  Field field_;
  std::map<std::array<int, 4>, cd> entries_;
};

/// An n x n matrix whose entries are vectors in C^d: the variable of the
/// Gram relaxations. Entry (i,j) lives in row i*n+j of a (n^2 x d) matrix.
class VecMat {
 public:
  VecMat() : n_(0), d_(0) {}
  VecMat(int n, int d) : n_(n), d_(d), data_(Matrix::Zero(n * n, d)) {
    if (n <= 0 || d <= 0) throw std::invalid_argument("VecMat: bad shape");
  }

  int n() const { return n_; }
  int d() const { return d_; }

  Matrix& data() { return data_; }
  const Matrix& data() const { return data_; }

  Eigen::Block<Matrix, 1> entry(int i, int j) {
    return data_.block<1, Eigen::Dynamic>(i * n_ + j, 0, 1, d_);
  }
  Eigen::Block<const Matrix, 1> entry(int i, int j) const {
    return data_.block<1, Eigen::Dynamic>(i * n_ + j, 0, 1, d_);
  }

  // Component matrix X_r with (X_r)_{ij} = (X_{ij})_r.
  Matrix component(int r) const;
  static VecMat from_components(const std::vector<Matrix>& comps);

  // Embedding of a scalar matrix as a d=1 vector-valued matrix.
  static VecMat from_matrix(const Matrix& a);

  bool is_real(double tol = 0.0) const;

  // <X, z>_{ij} = <X_{ij}, z> = sum_r (X_{ij})_r conj(z_r).
  Matrix contract(const Eigen::VectorXcd& z) const;

 private:
  int n_, d_;
  Matrix data_;
};

// M(X, Y) = sum_{ijkl} M_{ijkl} <X_{ij}, Y_{kl}>, conjugate-linear in Y.
cd evaluate(const Tensor4& m, const VecMat& x, const VecMat& y);

// M(A, B) = sum_{ijkl} M_{ijkl} A_{ij} conj(B_{kl}).
cd evaluate_matrices(const Tensor4& m, const Matrix& a, const Matrix& b);

// (XX*, X*X) with (XX*)_{ij} = sum_k <X_{ik}, X_{jk}>. Both Hermitian PSD.
std::pair<Matrix, Matrix> gram_products(const VecMat& x);

// Diagonal embedding M_{iijj} = A_{ij} of the classical Grothendieck problem.
Tensor4 grothendieck_embed(const RMatrix& a);

// The tight instance M_{0,j,j,0} = 1: Opt = 1 while the nc norm is 2n/(n+1).
Tensor4 haagerup_instance(int n);

}  // namespace ncg
