#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hetnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  std::size_t passed() const noexcept;
  std::size_t failed() const noexcept { return checks.size() - passed(); }
  bool ok() const noexcept { return failed() == 0; }
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::size_t drops_per_density = 100;
};

/// Invariant suite: path-loss continuity and equivalences, argmax invariance, indexed
/// association against brute force, spatial index against a linear scan, rate spot values.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace hetnet
