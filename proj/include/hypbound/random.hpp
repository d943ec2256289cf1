#pragma once

#include <cstdint>
#include <random>

namespace hypbound {

/// Child seed for sample `index` of a campaign seeded with `seed`
/// (two rounds of splitmix64). Independent of thread scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// mt19937_64 with explicit conversions so draws are identical on every
/// standard library (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypbound
