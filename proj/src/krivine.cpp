#include "ncg/krivine.hpp"

#include <cmath>
#include <stdexcept>

namespace ncg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double krivine_a(int m) {
  if (m < 1 || m % 2 == 0) return 0.0;
  const int l = (m - 1) / 2;
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  const double md = static_cast<double>(m);
  return sign * std::cos(md * kPi / 4.0) * 16.0 / (kPi * kPi * md * md * md * md) *
         (1.0 / md - sign * kPi / 4.0);
}

KrivineCoefficients krivine_coeffs(int L) {
  if (L < 1) throw std::invalid_argument("krivine_coeffs: L >= 1");
  KrivineCoefficients k;
  k.L = L;
  k.a.resize(L + 1);
  k.b.resize(L + 1);
  for (int l = 0; l <= L; ++l) k.a[l] = krivine_a(2 * l + 1);
  const double a1 = k.a[0];
  k.b[0] = std::sqrt(2.0) * std::pow(kPi / 4.0, 3.0) / (3.0 * a1);
  for (int l = 1; l <= L; ++l) {
    const long m = 2L * l + 1;
    // sum over divisors d != 1 of m (odd), paired around sqrt(m)
    double s = 0.0;
    for (long d = 3; d * d <= m; d += 2) {
      if (m % d != 0) continue;
      const long e = m / d;
      s += krivine_a(static_cast<int>(d)) * k.b[(e - 1) / 2];
      if (e != d) s += krivine_a(static_cast<int>(e)) * k.b[(d - 1) / 2];
    }
    s += krivine_a(static_cast<int>(m)) * k.b[0];
    k.b[l] = -s / a1;
  }
  double partial = 0.0;
  for (int l = 0; l <= L; ++l) partial += std::abs(k.b[l]);
  k.p = std::min(partial, 1.0);
  k.tail_bound = kKrivineTailC / L;
  return k;
}

double krivine_f(double x) {
  x = std::abs(x);                      // even
  x = std::fmod(x, 2.0 * kPi);
  double sign = 1.0;
  if (x >= kPi) {                       // f(x) = -f(x - pi)
    x -= kPi;
    sign = -sign;
  }
  if (x >= kPi / 2.0) {                 // reflect back into [0, pi/2)
    x = kPi - x;
    sign = -sign;
  }
  const double v = x <= kPi / 4.0
                       ? 1.0
                       : (6.0 / kPi) * (kPi / 2.0 - x) -
                             0.5 * std::pow(4.0 / kPi, 3.0) *
                                 std::pow(kPi / 2.0 - x, 3.0);
  return sign * v;
}

double krivine_g(double x) {
  const double c = std::cos(x);
  return c >= 0.0 ? 1.0 : -1.0;
}

TwoDimDraw draw_2d(const KrivineCoefficients& k, Rng& rng) {
  TwoDimDraw d;
  d.t = rng.uniform(-kPi, kPi);
  double u = rng.uniform();
  d.ell = -1;
  for (int l = 0; l <= k.L; ++l) {
    u -= std::abs(k.b[l]);
    if (u < 0.0) {
      d.ell = l;
      break;
    }
  }
  return d;
}

TwoDimRounding apply_2d(const KrivineCoefficients& k,
                        const std::vector<double>& theta,
                        const std::vector<double>& phi,
                        const TwoDimDraw& draw) {
  TwoDimRounding out;
  out.lambda.assign(theta.size(), 0.0);
  out.mu.assign(phi.size(), 0.0);
  if (draw.ell < 0) return out;
  const double m = 2.0 * draw.ell + 1.0;
  const double sb = k.b[draw.ell] >= 0.0 ? 1.0 : -1.0;
  for (std::size_t j = 0; j < theta.size(); ++j)
    out.lambda[j] = sb * krivine_f(m * theta[j] - draw.t);
  for (std::size_t j = 0; j < phi.size(); ++j)
    out.mu[j] = krivine_g(draw.t - m * phi[j]);
  return out;
}

TwoDimRounding round_2d(const std::vector<std::complex<double>>& xs,
                        const std::vector<std::complex<double>>& ys,
                        double eps, Rng& rng) {
  for (const auto& v : xs)
    if (std::abs(std::abs(v) - 1.0) > 1e-9)
      throw std::invalid_argument("round_2d: inputs must be unit scalars");
  for (const auto& v : ys)
    if (std::abs(std::abs(v) - 1.0) > 1e-9)
      throw std::invalid_argument("round_2d: inputs must be unit scalars");
  const int L = static_cast<int>(std::ceil(kKrivineTailC / eps));
  const KrivineCoefficients k = krivine_coeffs(std::max(1, L));
  std::vector<double> theta(xs.size()), phi(ys.size());
  for (std::size_t j = 0; j < xs.size(); ++j) theta[j] = std::arg(xs[j]);
  for (std::size_t j = 0; j < ys.size(); ++j) phi[j] = std::arg(ys[j]);
  return apply_2d(k, theta, phi, draw_2d(k, rng));
}

}  // namespace ncg
