#pragma once

#include <cstdint>

namespace monrep {

/// Deterministic 64-bit generator (splitmix64). Every randomized routine in
/// the library takes an explicit seed or Rng so runs are reproducible;
/// split() derives an independent stream per instance index.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); n = 0 gives 0.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  /// Child stream for instance k, independent of how much the parent is used
  /// afterwards.
  Rng split(std::uint64_t k) const {
    Rng r(state_ ^ (0x632be59bd9b4e019ULL * (k + 1)));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace monrep
