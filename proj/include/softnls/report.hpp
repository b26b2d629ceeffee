#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "softnls/soft_vector.hpp"

namespace softnls {

/// One offending sample: which check failed, by how much, and on what.
struct Counterexample {
  std::string check;
  std::uint64_t index = 0;
  double excess = 0.0;
  std::vector<SoftVector> vectors;
  std::optional<double> scalar;
};

/// Outcome of a verification suite. Each check reports an `excess`
/// (normalized so that the check passes iff excess <= tolerance); the report
/// keeps the maximum and the first few offenders by sample index.
struct VerificationReport {
  static constexpr std::size_t kMaxCounterexamples = 10;

  std::string suite;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::vector<Counterexample> counterexamples;
  std::map<std::string, std::uint64_t> violations_by_check;

  VerificationReport() = default;
  VerificationReport(std::string name, double tol, std::uint64_t rng_seed)
      : suite(std::move(name)), tolerance(tol), seed(rng_seed) {}

  [[nodiscard]] bool passed() const noexcept { return violations == 0; }

  [[nodiscard]] std::uint64_t violations_of(const std::string& check) const {
    auto it = violations_by_check.find(check);
    return it == violations_by_check.end() ? 0 : it->second;
  }

  /// Records one evaluated check. Returns true if it was a violation.
  bool record(const std::string& check, std::uint64_t index, double excess,
              std::vector<SoftVector> vectors = {}, std::optional<double> scalar = std::nullopt) {
    // NaN excess is a violation.
    const bool bad = !(excess <= tolerance);
    if (!bad) {
      max_violation = std::max(max_violation, std::max(excess, 0.0));
      return false;
    }
    ++violations;
    ++violations_by_check[check];
    // Kept finite so the report stays representable in JSON.
    constexpr double cap = std::numeric_limits<double>::max();
    const double capped = std::isnan(excess) ? cap : std::min(excess, cap);
    max_violation = std::max(max_violation, capped);
    if (counterexamples.size() < kMaxCounterexamples) {
      counterexamples.push_back({check, index, capped, std::move(vectors), scalar});
    }
    return true;
  }
};

/// Folds `part` into `into`; counterexamples stay ordered by arrival.
inline void merge_into(VerificationReport& into, const VerificationReport& part) {
  into.samples += part.samples;
  into.violations += part.violations;
  into.max_violation = std::max(into.max_violation, part.max_violation);
  for (const auto& [k, v] : part.violations_by_check) into.violations_by_check[k] += v;
  for (const auto& c : part.counterexamples) {
    if (into.counterexamples.size() >= VerificationReport::kMaxCounterexamples) break;
    into.counterexamples.push_back(c);
  }
}

}  // namespace softnls
