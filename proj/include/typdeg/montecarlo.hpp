#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "typdeg/degrees.hpp"
#include "typdeg/formula.hpp"
#include "typdeg/structure.hpp"

namespace typdeg::montecarlo {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for favorable/samples, widened if needed so that it
/// contains the point estimate.
Interval wilson_interval(std::uint64_t favorable, std::uint64_t samples, double z = kZ95);

struct SamplingOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  /// Samples are split evenly over this many generator streams; the result
  /// depends on (seed, streams) but not on the thread count.
  unsigned streams = 16;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Estimate {
  degrees::Kind kind = degrees::Kind::Typ;
  int m = 0;
  int n = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t favorable = 0;
  std::uint64_t seed = 0;
  unsigned streams = 0;
  Convention convention = Convention::Free;
  std::string signature;
  std::string formula_text;
};

/// Sampled d_n(phi:typ) or d_n(phi:ntr). samples >= 100; ntr needs even n.
Estimate estimate_degree(const structures::Space& space, const logic::Formula& f, degrees::Kind kind,
                         const SamplingOptions& opts);

/// Sampled mu_n of a sentence, or of phi^(mcount) for a property.
Estimate estimate_truth_probability(const structures::Space& space, const logic::Formula& f,
                                    std::optional<int> mcount, const SamplingOptions& opts);

/// Favorable count of one stream; exposed so callers can check the
/// stream-splitting contract.
std::uint64_t run_stream(const structures::Space& space, const logic::Formula& f, degrees::Kind kind, int m,
                         std::uint64_t seed, std::uint64_t stream, std::uint64_t samples);

}  // namespace typdeg::montecarlo
