#pragma once

#include <cstdint>
#include <random>

namespace fontgan {

// Deterministic random stream. std::mt19937_64 output is pinned by the
// standard, but the std:: distributions are not, so the uniform/normal
// mappings are implemented here to keep generated bits stable across
// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller (polar form avoided: trig form has no
  // rejection loop, so the draw count per call is fixed)
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // integer in [0, n)
  uint64_t below(uint64_t n);

  // Fisher-Yates, back to front
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stateless seed mixing for derived streams (epoch shuffles, per-font seeds).
uint64_t mix_seed(uint64_t seed, uint64_t salt);

}  // namespace fontgan
