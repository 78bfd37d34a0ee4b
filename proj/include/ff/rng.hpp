#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ff/chart.hpp"
#include "ff/polynomial.hpp"

namespace ff {

/// Counter-based deterministic generator: every draw hashes (key, counter)
/// through the splitmix64 finalizer, and split() derives independent
/// substreams by label, so results depend only on the seed and the labels,
/// never on call interleaving.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  Rng split(std::string_view label) const {
    uint64_t h = 1469598103934665603ull;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    Rng r(0);
    r.key_ = mix(key_ ^ mix(h));
    r.counter_ = 0;
    return r;
  }

  Rng split(uint64_t index) const {
    Rng r(0);
    r.key_ = mix(key_ ^ mix(index + 0x2545f4914f6cdd1dull));
    r.counter_ = 0;
    return r;
  }

  uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], both inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(next_u64() % range);
  }

  Rational small_rational(long max_num, long max_den) {
    long num = uniform_int(-max_num, max_num);
    long den = uniform_int(1, max_den);
    return Rational(num, den);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

/// Dense random polynomial: every monomial of total degree <= max_degree gets
/// an integer coefficient in [-coeff_range, coeff_range] (zeros are dropped).
Polynomial random_polynomial(Rng& rng, int dimension, int max_degree, long coeff_range);

/// Uniform point in the chart box (periodic axes in [0, period)).
std::vector<double> random_point(Rng& rng, const Chart& chart);

/// Rational point in the chart box with denominator `den`; on periodic axes
/// picks a rational in [0, floor(period)].
std::vector<Rational> random_rational_point(Rng& rng, const Chart& chart, long den);

}  // namespace ff
