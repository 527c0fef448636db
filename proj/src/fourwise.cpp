#include "ncg/fourwise.hpp"

#include <stdexcept>

namespace ncg {

namespace {
// Irreducible polynomials x^k + ... over GF(2), low bits listed.
constexpr std::uint32_t kPoly[6] = {0, 0b11, 0b111, 0b1011, 0b10011, 0b100101};
}  // namespace

BinaryField::BinaryField(int min_size) {
  if (min_size < 1 || min_size > 32)
    throw std::invalid_argument("BinaryField: unsupported size");
  k_ = 1;
  while ((1 << k_) < min_size) ++k_;
  poly_ = kPoly[k_];
}

std::uint32_t BinaryField::mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t acc = 0;
  while (b) {
    if (b & 1u) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << k_)) a ^= poly_;
  }
  return acc;
}

FourwiseZFamily::FourwiseZFamily(int d) : d_(d), field_(std::max(d, 2)) {
  if (d < 1) throw std::invalid_argument("FourwiseZFamily: d >= 1 required");
  const std::size_t q = static_cast<std::size_t>(field_.size());
  per_family_ = q * q * q;
  total_ = per_family_ * per_family_;
}

void FourwiseZFamily::signs(std::size_t seed_index, std::vector<int>& out) const {
  const std::uint32_t q = static_cast<std::uint32_t>(field_.size());
  const std::uint32_t a0 = static_cast<std::uint32_t>(seed_index % q);
  const std::uint32_t a1 = static_cast<std::uint32_t>((seed_index / q) % q);
  const std::uint32_t a3 = static_cast<std::uint32_t>(seed_index / q / q);
  out.resize(d_);
  for (int r = 0; r < d_; ++r) {
    const std::uint32_t x = static_cast<std::uint32_t>(r);
    const std::uint32_t h = a0 ^ field_.mul(a1, x) ^ field_.mul(a3, field_.pow3(x));
    out[r] = (h & 1u) ? -1 : 1;
  }
}

Eigen::VectorXcd FourwiseZFamily::member(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("FourwiseZFamily: index");
  std::vector<int> sigma, tau;
  signs(index % per_family_, sigma);
  signs(index / per_family_, tau);
  Eigen::VectorXcd z(d_);
  for (int r = 0; r < d_; ++r) {
    const std::complex<double> base(static_cast<double>(sigma[r]), 0.0);
    z(r) = tau[r] == 1 ? base : base * std::complex<double>(0.0, 1.0);
  }
  return z;
}

}  // namespace ncg
