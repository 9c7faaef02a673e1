#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrpower {

struct SuiteConfig {
  std::size_t dim = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  /// Unset: each suite uses its own pinned tolerance (see suite_tolerance).
  std::optional<double> tolerance;
  /// 0: MRPOWER_THREADS if set and positive, otherwise hardware concurrency.
  std::size_t threads = 0;
};

struct TrialFailure {
  std::size_t trial;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::vector<TrialFailure> failures;
  bool passed = false;  ///< max_violation <= tolerance and no failures
  std::int64_t wall_time_ms = 0;
  std::vector<double> values;      ///< headline quantity per trial
  std::vector<double> violations;  ///< per-trial violation
  std::string note;
};

/// Every runnable suite, in the order `all` runs them.
const std::vector<std::string_view>& suite_names();
bool is_suite(std::string_view name);
double suite_tolerance(std::string_view name);

/// Throws Error(UnsupportedScale) for cm_oracle at dim != 2 and
/// Error(PreconditionViolation) for an unknown suite, dim < 2 or trials == 0.
VerificationReport run_suite(std::string_view name, const SuiteConfig& config);

/// Worker count after applying the MRPOWER_THREADS override.
std::size_t resolve_threads(std::size_t requested);

std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
std::string report_summary_line(const VerificationReport& report);

}  // namespace mrpower
