#include "ncg/oracle.hpp"

#include <cmath>

namespace ncg {
namespace oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

RMatrix o2_element(double theta, bool reflect) {
  RMatrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  if (reflect) r.col(1) *= -1.0;
  return r;
}

double eval_real(const Tensor4& m, const RMatrix& u, const RMatrix& v) {
  double acc = 0.0;
  for (const auto& [idx, val] : m.nonzeros())
    acc += val.real() * u(idx[0], idx[1]) * v(idx[2], idx[3]);
  return acc;
}

// One-dimensional golden-section maximization of fn over [lo, hi].
double golden_max(const std::function<double(double)>& fn, double lo,
                  double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = fn(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace

double brute_opt_real(const Tensor4& m, int grid) {
  if (!m.real_field())
    throw std::invalid_argument("brute_opt_real: real tensor required");
  if (m.n() == 1) {
    // O_1 = {-1, 1}; the signed maximum is |M_0000|.
    return std::abs(m(0, 0, 0, 0).real());
  }
  if (m.n() != 2)
    throw std::invalid_argument("brute_opt_real: only n <= 2 supported");

  double best = 0.0;
  double best_t1 = 0.0, best_t2 = 0.0;
  bool best_r1 = false, best_r2 = false;
  const double h = 2.0 * kPi / grid;
  for (bool r1 : {false, true}) {
    for (int i = 0; i < grid; ++i) {
      const RMatrix u = o2_element(i * h, r1);
      // Contract the U side once per grid angle.
      RMatrix nv = RMatrix::Zero(2, 2);
      for (const auto& [idx, val] : m.nonzeros())
        nv(idx[2], idx[3]) += val.real() * u(idx[0], idx[1]);
      for (bool r2 : {false, true}) {
        for (int j = 0; j < grid; ++j) {
          const RMatrix v = o2_element(j * h, r2);
          const double value = std::abs((nv.array() * v.array()).sum());
          if (value > best) {
            best = value;
            best_t1 = i * h;
            best_t2 = j * h;
            best_r1 = r1;
            best_r2 = r2;
          }
        }
      }
    }
  }

  // Coordinate descent: golden-section on each angle in turn.
  double t1 = best_t1, t2 = best_t2;
  for (int sweep = 0; sweep < 30; ++sweep) {
    t1 = golden_max(
        [&](double t) {
          return std::abs(
              eval_real(m, o2_element(t, best_r1), o2_element(t2, best_r2)));
        },
        t1 - h, t1 + h);
    t2 = golden_max(
        [&](double t) {
          return std::abs(
              eval_real(m, o2_element(t1, best_r1), o2_element(t, best_r2)));
        },
        t2 - h, t2 + h);
  }
  best = std::max(
      best, std::abs(eval_real(m, o2_element(t1, best_r1),
                               o2_element(t2, best_r2))));
  return best;
}

double brute_opt_complex_n1(const Tensor4& m, int grid) {
  if (m.n() != 1) throw std::invalid_argument("brute_opt_complex_n1: n = 1");
  const cd base = m(0, 0, 0, 0);
  double best = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const cd alpha = std::exp(cd(0.0, 2.0 * kPi * i / grid));
      const cd beta = std::exp(cd(0.0, 2.0 * kPi * j / grid));
      best = std::max(best, std::abs(base * alpha * std::conj(beta)));
    }
  return best;
}

void for_each_z(int d, const std::function<void(const Eigen::VectorXcd&)>& fn) {
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) {
    count *= 4;
    if (count > 1000000)
      throw std::invalid_argument("for_each_z: 4^d exceeds limit");
  }
  static const cd roots[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  Eigen::VectorXcd z(d);
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t c = code;
    for (int r = 0; r < d; ++r) {
      z(r) = roots[c & 3];
      c >>= 2;
    }
    fn(z);
  }
}

void for_each_sign(int d,
                   const std::function<void(const Eigen::VectorXcd&)>& fn) {
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) {
    count *= 2;
    if (count > 1000000)
      throw std::invalid_argument("for_each_sign: 2^d exceeds limit");
  }
  Eigen::VectorXcd e(d);
  for (std::size_t code = 0; code < count; ++code) {
    for (int r = 0; r < d; ++r) e(r) = (code >> r) & 1 ? -1.0 : 1.0;
    fn(e);
  }
}

Matrix exhaustive_z_expectation(
    const VecMat& w, const std::function<Matrix(const Matrix&)>& statistic) {
  Matrix acc = Matrix::Zero(w.n(), w.n());
  std::size_t count = 0;
  for_each_z(w.d(), [&](const Eigen::VectorXcd& z) {
    acc += statistic(w.contract(z));
    ++count;
  });
  return acc / static_cast<double>(count);
}

Matrix exhaustive_sign_expectation(
    const VecMat& x, const std::function<Matrix(const Matrix&)>& statistic) {
  Matrix acc = Matrix::Zero(x.n(), x.n());
  std::size_t count = 0;
  for_each_sign(x.d(), [&](const Eigen::VectorXcd& e) {
    acc += statistic(x.contract(e));
    ++count;
  });
  return acc / static_cast<double>(count);
}

}  // namespace oracle
}  // namespace ncg
