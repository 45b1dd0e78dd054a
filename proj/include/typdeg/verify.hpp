#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "typdeg/degrees.hpp"

namespace typdeg::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::string detail;  // counterexample inputs on failure
  std::size_t cases = 0;
};

/// A (signature, convention, property) row swept over n in [min_n, max_n].
struct Case {
  Signature sig;
  Convention conv;
  std::string prop;  // catalog name
  int max_n;
  int min_n = 1;
};

/// Enumerable configurations shared by the partition, neutrality and
/// sampling checks.
std::vector<Case> partition_matrix();

struct VerifyOptions {
  degrees::EnumerationOptions enumeration;
  std::uint64_t seed = 0;
};

/// combinatorics, logic, structures, partition, oracles, bounds, montecarlo,
/// identities (combinatorics + partition + oracles + bounds) or all.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

std::vector<std::string> suite_names();

}  // namespace typdeg::verify
