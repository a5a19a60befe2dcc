#pragma once

#include <cstdint>

#include "hamforms/rational.hpp"

namespace hamforms {

// 64-bit linear congruential generator (Knuth's MMIX constants). Used for
// reproducible sample points; the seed is echoed in every sampled report.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  // Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>((next() >> 16) % span);
  }

  // p/q with |p| <= bound and 1 <= q <= bound.
  Rational rational(long long bound) {
    const long long p = uniform(-bound, bound);
    const long long q = uniform(1, bound);
    return Rational(p) / Rational(q);
  }

  Rational nonzero_rational(long long bound) {
    for (;;) {
      Rational r = rational(bound);
      if (!r.is_zero()) return r;
    }
  }

  std::uint64_t seed_state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace hamforms
