#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace pogdd {

// Deterministic PRNG used everywhere randomness is needed. std::mt19937 is
// portable but the standard distributions are not, so both the engine
// (xoshiro256++) and the variate transforms live here. Streams are derived
// from a root seed with splitmix64; mixing a label into the seed gives an
// independent child stream, so e.g. the fixation draws of a trace do not
// shift when an unrelated noise knob changes.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(uint64_t seed) : seed_(seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  // Independent child stream identified by a label.
  Rng split(uint64_t label) const {
    uint64_t sm = seed_ ^ (0xA0761D6478BD642FULL + label * 0xE7037ED1A0B428DBULL);
    uint64_t derived = splitmix64(sm);
    return Rng(derived);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n == 0 is invalid.
  uint64_t uniform_int(uint64_t n) {
    // Multiply-shift; bias is negligible for the n used here but we reject
    // the short tail anyway to keep draws exact.
    uint64_t threshold = (-n) % n;
    for (;;) {
      uint64_t r = next_u64();
      __uint128_t m = static_cast<__uint128_t>(r) * n;
      if (static_cast<uint64_t>(m) >= threshold)
        return static_cast<uint64_t>(m >> 64);
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  double lognormal(double log_mean, double log_sigma) {
    return std::exp(normal(log_mean, log_sigma));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  uint64_t seed() const { return seed_; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4] = {};
  uint64_t seed_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pogdd
