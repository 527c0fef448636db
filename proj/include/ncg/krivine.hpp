#pragma once

#include <vector>

#include "ncg/rng.hpp"

namespace ncg {

// Validated bound on the coefficient tail: sum_{l > L} |b_{2l+1}| <= C / L.
// The series decays like 1/l^2; the empirical maximum of L * tail(L) is
// below 0.02 (attained at L = 3), so 0.05 is safe. See the tail-fit test.
inline constexpr double kKrivineTailC = 0.05;

struct KrivineCoefficients {
  int L = 0;
  std::vector<double> a;  // a[l] = a_{2l+1}, l = 0..L (even-index terms are 0)
  std::vector<double> b;  // b[l] = b_{2l+1}, l = 0..L
  double p = 0.0;         // sum_{l <= L} |b_{2l+1}| = 1 - tail
  double tail_bound = 0.0;
};

// Closed-form a_{2l+1} and the divisor-sum recurrence for b_{2l+1}.
double krivine_a(int odd_m);
KrivineCoefficients krivine_coeffs(int L);

// g(x) = sign(cos x); f is 1 on [0, pi/4], the cubic
// (6/pi)(pi/2 - t) - (1/2)(4/pi)^3 (pi/2 - t)^3 on [pi/4, pi/2), extended
// even with f(x + pi) = -f(x).
double krivine_f(double x);
double krivine_g(double x);

struct TwoDimDraw {
  double t = 0.0;  // uniform on [-pi, pi]
  int ell = -1;    // -1 = null outcome, else 0..L with probability |b_{2l+1}|
};

TwoDimDraw draw_2d(const KrivineCoefficients& k, Rng& rng);

struct TwoDimRounding {
  std::vector<double> lambda;  // one per x_j, in [-1, 1]
  std::vector<double> mu;      // one per y_k, in [-1, 1]
};

// Applies one draw to unit scalars x_j, y_k (given by phases theta, phi):
// lambda_j = sign(b_{2l+1}) f((2l+1) theta_j - t), mu_k = g(t - (2l+1) phi_k).
TwoDimRounding apply_2d(const KrivineCoefficients& k,
                        const std::vector<double>& theta,
                        const std::vector<double>& phi, const TwoDimDraw& draw);

// One-shot interface: validates |x_j| = |y_k| = 1 and runs a single draw
// with truncation L = ceil(C / eps).
TwoDimRounding round_2d(const std::vector<std::complex<double>>& xs,
                        const std::vector<std::complex<double>>& ys,
                        double eps, Rng& rng);

}  // namespace ncg
