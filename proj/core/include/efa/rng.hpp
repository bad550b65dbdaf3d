#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "efa/tensor.hpp"

namespace efa {

// Deterministic RNG. mt19937's output sequence is pinned by the standard;
// distributions are derived from raw draws here (not std::*_distribution,
// whose results vary between standard library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(static_cast<std::uint32_t>(seed)) {}

  std::uint32_t next_u32() { return gen_(); }

  // [0, 1) with 53 bits of entropy.
  double uniform() {
    const std::uint64_t a = next_u32() >> 5;  // 27 bits
    const std::uint64_t b = next_u32() >> 6;  // 26 bits
    return static_cast<double>((a << 26) | b) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(static_cast<std::uint64_t>(uniform() * static_cast<double>(span)) % span);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937 gen_;
};

// He-uniform fan-in init: U(-b, b) with b = sqrt(6 / fan_in).
void he_uniform_fill(std::vector<float>& data, int fan_in, Rng& rng);
void he_uniform_fill(Tensor& t, int fan_in, Rng& rng);

void uniform_fill(Tensor& t, float lo, float hi, Rng& rng);

}  // namespace efa
