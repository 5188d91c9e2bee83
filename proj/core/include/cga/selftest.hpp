#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cga {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst residual or counterexample summary
};

struct SelftestOptions {
  /// Documented default seed; override with --seed for fresh samples.
  std::uint64_t seed = 1729;
  /// Negative-control hook: pretends the metric table is corrupted so the
  /// metric-soundness property must fail.
  bool corrupt_metric = false;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool all_pass = false;
};

/// Runs the full randomized invariant suite over every module with the
/// given seed. Deterministic: the same options produce the same report.
SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace cga
