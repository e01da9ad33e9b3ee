// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// Named numerical suites, each checking one statement about the family and
// reporting per-case residuals.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmm {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultSeed = 20260314;

struct SuiteConfig {
  std::optional<std::pair<int, int>> n_range;  // inclusive; suite default when empty
  std::uint64_t seed = kDefaultSeed;
  int samples = 0;  // per-n sample count; 0 selects the suite default
  int grid = 0;     // grid side; 0 selects the suite default
  int budget = 512;
  int workers = 0;
};

struct CaseRecord {
  std::string key;  // sort key, zero-padded
  std::string input;
  double residual = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite_id;
  std::string anchor;
  std::string residual_definition;
  bool empirical = false;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CaseRecord> cases;
  std::vector<std::string> notes;
  double max_residual = 0.0;
  bool passed = false;
  long runtime_ms = 0;
};

/// All known suite ids, in documentation order.
const std::vector<std::string>& suite_ids();

/// Runs one suite; throws UsageError for an unknown id or a bad config.
VerificationReport run_suite(const std::string& suite_id, const SuiteConfig& config);

/// One-line header naming the record columns.
std::string report_schema();

/// Banner, one tab-separated record per case, and a result line. runtime_ms
/// appears only with `timing`, so the default output is reproducible.
std::string format_report(const VerificationReport& report, bool timing = false);

}  // namespace gmm
