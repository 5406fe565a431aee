#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aiet/config.hpp"
#include "aiet/empirical.hpp"
#include "aiet/regularity.hpp"
#include "aiet/summary.hpp"

namespace aiet {

enum ExitCode : int { exit_ok = 0, exit_unexpected = 1, exit_invalid_config = 2, exit_mismatch = 3, exit_numeric = 4 };

/// Maps the exception currently being handled to an exit code.
int exit_code_for_current_exception();

/// Worker count: hardware concurrency capped by ARTIFACT_THREADS.
int thread_budget();

struct AnalysisResult {
  RegularityModel model;
  RegularityCurve curve;
  SummaryRecord summary;
  std::optional<EmpiricalResult> empirical;
};

/// Parameter at which the empirical refinement is evaluated.
inline constexpr double empirical_t = 1.0;

/// Builds the model and the curve on the configured grid.
AnalysisResult analyze(const JobConfig& config, int threads);

/// analyze() followed by writing summary.json, curves.csv and, for a
/// positive empirical depth, empirical_k<k>.csv into the output directory.
AnalysisResult run_analyze(const JobConfig& config, int threads);

/// Shortest round-trip decimal form, locale independent.
std::string format_real(double value);
std::string curves_csv(const RegularityCurve& curve);
/// Writes through a temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Reference data of the five-letter example as JSON text.
const std::string& bf5_golden_json();

struct GoldenCheck {
  bool ok = true;
  std::string first_mismatch;  ///< field name
  std::string detail;
  double symmetry_residual = 0;
};

/// Compares an analysis of the example with reference data and checks the
/// t <-> -t symmetry of the four curves (1e-6). Throws InputError for a
/// malformed golden document.
GoldenCheck compare_golden(const AnalysisResult& result, const std::string& golden_json);

/// Largest |curve(t) - curve(-t)| over the four regularity columns, pairing
/// grid point k with n - 1 - k.
double symmetry_residual(const RegularityCurve& curve);

/// Runs the embedded example into `out_dir`, then compares it with the
/// golden data (embedded, or read from `golden_path`). Throws
/// InvariantError naming the first mismatching field.
AnalysisResult run_example_bf5(const std::filesystem::path& out_dir, int threads,
                               const std::optional<std::filesystem::path>& golden_path = std::nullopt);

struct SuiteResult {
  std::string name;
  bool passed = true;
  double magnitude = 0;  ///< worst observed deviation
  double tolerance = 0;
  std::string detail;
};

struct VerifyReport {
  bool skipped = false;
  std::string skip_reason;
  std::vector<SuiteResult> suites;
  bool passed() const;
  std::string to_json() const;
};

/// Cross-module invariant suites on the configured system. Systems that are
/// not of hyperbolic periodic type are reported as skipped.
VerifyReport run_verify(const JobConfig& config, int threads);

}  // namespace aiet
