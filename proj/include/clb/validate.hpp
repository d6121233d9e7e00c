#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clb/sensitivity.hpp"

namespace clb {

/// One cross-path comparison point.
struct ValidationRecord {
  double r = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double amp_a = 0.0;
  double amp_b = 0.0;

  std::string comparison;  // "oracle-mean", "oracle-variance", variant names
  double algebra_value = 0.0;
  double other_value = 0.0;
  double relative_deviation = 0.0;
  double printed_over_algebra = 0.0;  // closed-form points only
  double truncation_deficit = 0.0;    // oracle points only
};

struct VariantResult {
  PrefactorPlacement placement = PrefactorPlacement::numerator;
  PsiAmplitudeExponent psi_exponent = PsiAmplitudeExponent::two;
  double max_relative_deviation = 0.0;
  bool matches = false;

  std::string name() const;
};

struct VacuumFactorSample {
  double r = 0.0;
  double measured_factor = 0.0;   // printed / algebra at vacuum input
  double predicted_factor = 0.0;  // mu^4 nu^4
};

struct ValidationSummary {
  double max_algebra_oracle_deviation = 0.0;
  ValidationRecord worst_oracle_point;
  bool oracle_within_tolerance = false;

  std::vector<VacuumFactorSample> vacuum_factors;

  std::vector<VariantResult> variants;
  /// Index into `variants` of the unique matching variant, if any.
  std::optional<std::size_t> matching_variant;

  double oracle_tolerance = 0.0;
  double variant_tolerance = 0.0;
};

struct ValidationOptions {
  double oracle_tolerance = 1e-6;
  double variant_tolerance = 1e-9;
  /// Points where the signal term is this small (relative to the mean) are
  /// skipped in the closed-form comparison; near a divergence the quotient
  /// amplifies roundoff far beyond the tolerance being measured.
  double derivative_floor = 1e-6;
};

/// Runs the full cross-path campaign: algebra vs truncated-Fock moments on
/// the small-parameter grid, the printed-vs-algebra vacuum factor scan, and
/// the four closed-form variants against the algebra path on a wide grid.
ValidationSummary run_validation(const ValidationOptions& options,
                                 std::vector<ValidationRecord>* records);

}  // namespace clb
