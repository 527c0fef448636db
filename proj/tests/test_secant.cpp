#include <doctest.h>

#include <cmath>

#include "ncg/secant.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("secant density normalizes and matches the characteristic function") {
  // Simpson quadrature of int a^{it} phi(t) dt against 2a/(1+a^2).
  const double T = 40.0;
  const int nodes = 80001;
  const double h = 2.0 * T / (nodes - 1);
  for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double la = std::log(a);
    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double t = -T + i * h;
      const double w = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * std::cos(la * t) * secant_density(t);
    }
    acc *= h / 3.0;
    CHECK(acc == doctest::Approx(2.0 * a / (1.0 + a * a)).epsilon(1e-9));
  }
}

TEST_CASE("sampler matches mean and characteristic function") {
  SecantSampler sampler(2024);
  const int draws = 200000;
  double mean = 0.0, char2 = 0.0;
  const double l2 = std::log(2.0);
  for (int i = 0; i < draws; ++i) {
    const double t = sampler.sample();
    mean += t;
    char2 += std::cos(l2 * t);
  }
  mean /= draws;
  char2 /= draws;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(char2 - 0.8) < 0.02);
}

TEST_CASE("a=1 characteristic value is exactly 1") {
  SecantSampler sampler(7);
  double acc = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = sampler.sample();
    acc += std::cos(0.0 * t);  // a = 1 -> a^{it} = 1 identically
  }
  CHECK(acc == doctest::Approx(100.0));
}

TEST_CASE("sampler median sits at zero") {
  SecantSampler sampler(99);
  int below = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    if (sampler.sample() < 0.0) ++below;
  CHECK(std::abs(below / static_cast<double>(draws) - 0.5) < 0.01);
}
