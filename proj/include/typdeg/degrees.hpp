#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "typdeg/exact.hpp"
#include "typdeg/formula.hpp"
#include "typdeg/structure.hpp"

namespace typdeg::degrees {

enum class Kind { Typ, Ntr, Mu, MuAtLeast };
enum class Method { Enumeration, ClosedForm, MonteCarlo };

const char* to_string(Kind kind);
const char* to_string(Method method);
Kind parse_kind(const std::string& text);

/// Largest spaces exhaustive enumeration will visit (about 17M structures).
struct Caps {
  int unary_bits = 24;  // k * n
  int function_n = 8;
  int graph_n = 7;

  bool allows(const structures::Space& space) const;
  /// "unary=24,function=8,graph=7"
  std::string to_string() const;
  /// Applies overrides such as "unary=30,graph=8".
  void apply_overrides(const std::string& text);
};

struct EnumerationOptions {
  Caps caps;
  unsigned threads = 0;              // 0: hardware concurrency
  std::uint64_t chunk = 1U << 15;    // indices per work item
};

/// One exact (or estimated) measurement; value = favorable/total.
struct DegreeReport {
  Kind kind = Kind::Typ;
  int m = 0;  // witness threshold, MuAtLeast only
  int n = 0;
  ExactInteger favorable;
  ExactInteger total;
  ExactRational value;
  double float_value = 0.0;
  Method method = Method::Enumeration;
  Convention convention = Convention::Free;
  std::string signature;
  std::string formula_text;
};

DegreeReport make_report(Kind kind, int n, const ExactInteger& favorable, const ExactInteger& total, Method method,
                         Convention conv, const Signature& sig, const std::string& formula_text, int m = 0);

/// Favorable counts gathered in one pass over S_n(L).
struct Tally {
  std::uint64_t total = 0;
  std::uint64_t typical = 0;   // |phi(M)| > n/2
  std::uint64_t atypical = 0;  // |phi(M)| < n/2, i.e. the negation is typical
  std::uint64_t neutral = 0;   // |phi(M)| = n/2
  std::uint64_t models = 0;    // sentences only
  std::vector<std::uint64_t> at_least;  // parallel to the requested thresholds

  Tally& operator+=(const Tally& other);
};

/// Throws Error(CapExceeded) unless `space` is within `caps`.
void require_enumerable(const structures::Space& space, const Caps& caps);

/// Exhaustive single pass: decodes each structure once and folds every
/// requested count. Partitioned over index ranges; the result does not depend
/// on chunking or thread count. With `classify` false only the threshold
/// counts (or models) are filled, which lets witness counting stop sooner.
Tally tally(const structures::Space& space, const logic::Formula& f, const std::vector<int>& thresholds,
            const EnumerationOptions& opts = {}, bool classify = true);

/// d_n(phi:typ).
DegreeReport typicality_degree(const structures::Space& space, const logic::Formula& f,
                               const EnumerationOptions& opts = {});

/// d_n(phi:ntr); n must be even.
DegreeReport neutrality_degree(const structures::Space& space, const logic::Formula& f,
                               const EnumerationOptions& opts = {});

/// mu_n of a sentence, or of phi^(mcount) when `mcount` is given for a property.
DegreeReport truth_probability(const structures::Space& space, const logic::Formula& f, std::optional<int> mcount,
                               const EnumerationOptions& opts = {});

struct PartitionCheck {
  DegreeReport typ;
  DegreeReport negated_typ;
  std::optional<DegreeReport> ntr;  // even n only
  ExactRational sum;
  bool holds = false;
};

/// d_n(phi:typ) + d_n(!phi:typ) [+ d_n(phi:ntr)] == 1, with !phi enumerated
/// separately.
PartitionCheck partition_identity_check(const structures::Space& space, const logic::Formula& f,
                                        const EnumerationOptions& opts = {});

}  // namespace typdeg::degrees
