#include "ncg/secant.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double secant_density(double t) {
  return 1.0 / (std::exp(kPi * t / 2.0) + std::exp(-kPi * t / 2.0));
}

double SecantSampler::sample() {
  const double u = std::clamp(rng_.uniform(), 1e-12, 1.0 - 1e-12);
  return (2.0 / kPi) * std::log(std::tan(kPi * u / 2.0));
}

double sample_secant(SecantSampler& sampler) { return sampler.sample(); }

}  // namespace ncg
