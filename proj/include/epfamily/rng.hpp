#pragma once

#include <cstdint>
#include <random>

namespace epfamily {

/// Deterministic random source. Wraps std::mt19937_64 (whose output sequence
/// the standard pins down exactly) and converts to doubles explicitly, so
/// streams are reproducible across platforms and library versions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  /// Stream seeded from (seed, index) via a splitmix64 mix; distinct indices
  /// give statistically independent streams, so parallel consumers can each
  /// take their own without coordination.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

private:
  std::mt19937_64 gen_;
};

} // namespace epfamily
