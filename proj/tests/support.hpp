#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "hypbound/models.hpp"
#include "hypbound/random.hpp"

namespace hypbound::test {

inline bool rel_close(double x, double y, double rel, double abs_floor = 0.0) {
  return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y)) + abs_floor;
}

/// Uniform hyperbolic radius in [0, radius], uniform angle.
inline Complex random_disc(Rng& rng, double radius = 6.0) {
  return std::polar(std::tanh(rng.uniform(0.0, radius) / 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

inline ModelPoint random_point(Rng& rng, Model model, double radius = 6.0) {
  return convert(disc_point(random_disc(rng, radius)), model);
}

inline Complex random_punctured(Rng& rng, double min_abs = 1e-3, double max_abs = 0.99) {
  const double r = std::exp(rng.uniform(std::log(min_abs), std::log(max_abs)));
  return std::polar(r, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

}  // namespace hypbound::test
