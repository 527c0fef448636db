#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace ncg {

// GF(2^k) for k <= 5, multiplication by shift-and-reduce.
class BinaryField {
 public:
  explicit BinaryField(int min_size);

  int size() const { return 1 << k_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow3(std::uint32_t a) const { return mul(a, mul(a, a)); }

 private:
  int k_;
  std::uint32_t poly_;  // irreducible reduction polynomial
};

// Enumerable family of z-vectors in {1,-1,i,-i}^d whose coordinates are
// exactly four-wise independent and uniform. Two independent sign families
// sigma, tau are combined as z_r = sigma_r * i^{(1-tau_r)/2}; each sign
// family evaluates a_0 + a_1 x + a_3 x^3 over a binary field of size >= d
// at d distinct points and keeps the low output bit. Family size is
// |F|^3 per sign family, so |F|^6 z-vectors overall.
class FourwiseZFamily {
 public:
  explicit FourwiseZFamily(int d);

  std::size_t size() const { return total_; }
  int dimension() const { return d_; }

  Eigen::VectorXcd member(std::size_t index) const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < total_; ++i) fn(member(i));
  }

 private:
  void signs(std::size_t seed_index, std::vector<int>& out) const;

  int d_;
  BinaryField field_;
  std::size_t per_family_;  // |F|^3
  std::size_t total_;       // |F|^6
};

}  // namespace ncg
