#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "typdeg/degrees.hpp"
#include "typdeg/exact.hpp"
#include "typdeg/formula.hpp"
#include "typdeg/montecarlo.hpp"

namespace typdeg::analysis {

enum class MethodPolicy { Auto, Enumeration, ClosedForm, MonteCarlo };
MethodPolicy parse_policy(const std::string& text);

struct Budget {
  degrees::EnumerationOptions enumeration;
  montecarlo::SamplingOptions sampling;
};

struct SequencePoint {
  int n = 0;
  degrees::Kind kind = degrees::Kind::Typ;
  int m = 0;
  double value = 0.0;
  std::optional<ExactRational> exact;          // enumeration and closed form
  std::optional<degrees::Method> method;       // empty when no method worked
  std::optional<std::pair<double, double>> ci;  // monte carlo
  std::string error;
};

/// One point per n (ntr skips odd n). `ns` must be strictly increasing.
/// Auto tries enumeration under the caps, then a registered closed form, then
/// Monte Carlo. A failing point keeps its error and the sequence continues.
std::vector<SequencePoint> build_sequence(const Signature& sig, const logic::Formula& f, degrees::Kind kind,
                                          const std::vector<int>& ns, Convention conv, MethodPolicy policy,
                                          const Budget& budget, int m = 0);

enum class Trend { DecreasingGap, NonMonotone, Inconclusive };
const char* to_string(Trend t);

struct ConvergenceReport {
  std::optional<double> target;
  double last_value = 0.0;
  std::optional<double> last_gap;
  Trend trend = Trend::Inconclusive;
  std::optional<double> aitken_extrapolation;
  std::size_t window = 0;  // points the trend was judged on
};

/// Gap trend over the last max(3, half) usable points; successive
/// differences stand in for gaps when there is no target. Monte Carlo points in
/// the window make the trend inconclusive. Aitken's delta-squared runs on the
/// last three consecutive exact points. Throws Error(OutOfRange) for fewer
/// than three points.
ConvergenceReport convergence_report(const std::vector<SequencePoint>& seq, std::optional<double> target);

/// Known limit of the sequence for catalog properties, if any.
std::optional<double> registered_limit(const Signature& sig, Convention conv, const logic::Formula& f,
                                       degrees::Kind kind, int m = 0);

/// |value - target|, from the exact value when there is one so that gaps
/// below double resolution near the target survive.
std::optional<double> point_gap(const SequencePoint& p, std::optional<double> target);

/// "a,b,c", "a:b:step" or "a:b:loggrid" (1-2-5 steps per decade, endpoints
/// included).
std::vector<int> parse_n_list(const std::string& text);

/// Header "n,kind,method,value,exact,ci_low,ci_high,target,gap" and one row
/// per point.
std::string to_csv(const std::vector<SequencePoint>& seq, std::optional<double> target);

}  // namespace typdeg::analysis
