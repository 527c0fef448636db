#pragma once

#include "ncg/tensor.hpp"

namespace ncg {

// Singular values below this are treated as zero throughout; on the kernel
// the phase power lambda^{it} is defined as 1 so outputs stay unitary.
inline constexpr double kSingularFloor = 1e-12;

double op_norm(const Matrix& a);

bool is_unitary(const Matrix& a, double tol = 1e-8);
bool is_orthogonal(const Matrix& a, double tol = 1e-8);
bool is_hermitian(const Matrix& a, double tol = 1e-8);
bool is_real(const Matrix& a, double tol = 0.0);

// Polar decomposition A = Q P with Q unitary and P = |A| PSD, computed from
// the SVD A = L S R^*: Q = L R^*, P = R S R^*.
std::pair<Matrix, Matrix> polar(const Matrix& a);

// P^{it} for Hermitian PSD P, via the spectral decomposition.
Matrix unitary_power(const Matrix& p, double t);

// The contraction A maximizing |M(A, B)| over ||A|| <= 1: with
// N_{ij} = sum_{kl} M_{ijkl} conj(B_{kl}), A is the unitary factor aligned
// with conj(N), and M(A, B) equals the nuclear norm of N.
Matrix contract_best_response(const Tensor4& m, const Matrix& b);

// N_{ij} = sum_{kl} M_{ijkl} conj(B_{kl}).
Matrix partial_contract(const Tensor4& m, const Matrix& b);

}  // namespace ncg
