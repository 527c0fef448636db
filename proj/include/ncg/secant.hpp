#pragma once

#include "ncg/rng.hpp"

namespace ncg {

// Hyperbolic secant density (1/2) sech(pi t / 2); its characteristic
// function at log(a) is 2a / (1 + a^2).
double secant_density(double t);

// Samples by inverse CDF: t = (2/pi) log(tan(pi u / 2)).
class SecantSampler {
 public:
  explicit SecantSampler(Rng rng) : rng_(rng) {}
  explicit SecantSampler(std::uint64_t seed) : rng_(seed) {}

  double sample();

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

double sample_secant(SecantSampler& sampler);

}  // namespace ncg
