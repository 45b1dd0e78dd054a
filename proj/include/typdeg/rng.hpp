#pragma once

#include <cstdint>
#include <random>

namespace typdeg {

/// Pinned generator family. Stream s of seed S is an mt19937_64 seeded with
/// splitmix64(S ^ splitmix64(s + 1)); bounded draws use rejection on the raw
/// 64-bit output so results do not depend on the standard library vendor.
inline constexpr const char* kGeneratorId = "mt19937_64+splitmix64-streams/v1";

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace typdeg
