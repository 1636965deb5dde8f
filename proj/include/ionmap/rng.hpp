#pragma once

#include <cstdint>
#include <random>

namespace ionmap {

/// Deterministic random source. The engine (mt19937_64 via seed_seq) and the
/// uniform mapping are both pinned by the standard, so identical (seed, stream)
/// reproduce identical draws on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  uint64_t next() { return engine_(); }

  /// Uniform double in [lo, hi) with 53 random mantissa bits.
  double uniform(double lo, double hi) {
    const double u = (next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ionmap
