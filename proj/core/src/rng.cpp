#include "efa/rng.hpp"

#include <cmath>

namespace efa {

void he_uniform_fill(std::vector<float>& data, int fan_in, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  for (auto& v : data) v = static_cast<float>(rng.uniform(-bound, bound));
}

void he_uniform_fill(Tensor& t, int fan_in, Rng& rng) {
  he_uniform_fill(t.data, fan_in, rng);
}

void uniform_fill(Tensor& t, float lo, float hi, Rng& rng) {
  for (auto& v : t.data) v = static_cast<float>(rng.uniform(lo, hi));
}

}  // namespace efa
