#include "clb/validate.hpp"

#include <cmath>
#include <numbers>

#include "clb/fock.hpp"

namespace clb {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_dev(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

void note_worst(ValidationSummary& summary, const ValidationRecord& rec) {
  if (rec.relative_deviation >= summary.max_algebra_oracle_deviation) {
    summary.max_algebra_oracle_deviation = rec.relative_deviation;
    summary.worst_oracle_point = rec;
  }
}

void push(std::vector<ValidationRecord>* records, const ValidationRecord& r) {
  if (records != nullptr) records->push_back(r);
}

}  // namespace

std::string VariantResult::name() const {
  std::string n = placement == PrefactorPlacement::numerator
                      ? "prefactor-numerator"
                      : "prefactor-denominator";
  n += psi_exponent == PsiAmplitudeExponent::two ? "/psi-quartic"
                                                 : "/psi-quadratic";
  return n;
}

ValidationSummary run_validation(const ValidationOptions& options,
                                 std::vector<ValidationRecord>* records) {
  ValidationSummary summary;
  summary.oracle_tolerance = options.oracle_tolerance;
  summary.variant_tolerance = options.variant_tolerance;

  // Phase 1: algebra vs truncated-Fock moments, small-parameter grid.
  const double r_grid[] = {0.1, 0.3, 0.5};
  const double amp_grid[] = {0.0, 0.5, 1.0};
  const double theta_grid[] = {0.0, kPi / 8.0, kPi / 4.0};
  const double phi_grid[] = {0.1, 0.5, 1.0};
  for (double r : r_grid) {
    const ChainSimulator sim(r, FockCutoff(30));
    for (double amp : amp_grid) {
      for (double theta : theta_grid) {
        for (double phi : phi_grid) {
          const CoherentInput input(amp, amp, theta);
          const MomentReport alg = moments(r, phi, input);
          const MomentReport orc = sim.run(phi, input);

          ValidationRecord rec;
          rec.r = r;
          rec.phi = phi;
          rec.theta = theta;
          rec.amp_a = rec.amp_b = amp;
          rec.truncation_deficit = orc.truncation_deficit;

          rec.comparison = "oracle-mean";
          rec.algebra_value = alg.mean;
          rec.other_value = orc.mean;
          rec.relative_deviation = rel_dev(alg.mean, orc.mean);
          note_worst(summary, rec);
          push(records, rec);

          rec.comparison = "oracle-variance";
          rec.algebra_value = alg.variance;
          rec.other_value = orc.variance;
          rec.relative_deviation = rel_dev(alg.variance, orc.variance);
          note_worst(summary, rec);
          push(records, rec);
        }
      }
    }
  }
  summary.oracle_within_tolerance =
      summary.max_algebra_oracle_deviation < options.oracle_tolerance;

  // Phase 2: printed-vs-algebra multiplicative factor at vacuum inputs.
  for (double r : {0.5, 1.0, 1.5, 2.0}) {
    const double phi = 0.5;
    const CoherentInput vac = CoherentInput::vacuum();
    const SensitivityPoint alg = phase_sensitivity(r, phi, vac);
    ClosedFormTerms terms;
    const SensitivityPoint printed =
        closed_form_printed(r, phi, 0.0, 0.0, 0.0, terms);
    const double mu = std::cosh(r);
    const double nu = std::sinh(r);

    VacuumFactorSample sample;
    sample.r = r;
    sample.measured_factor = printed.delta_phi_squared / alg.delta_phi_squared;
    sample.predicted_factor = std::pow(mu * nu, 4);
    summary.vacuum_factors.push_back(sample);

    ValidationRecord rec;
    rec.r = r;
    rec.phi = phi;
    rec.comparison = "printed-vacuum-factor";
    rec.algebra_value = alg.delta_phi_squared;
    rec.other_value = printed.delta_phi_squared;
    rec.relative_deviation =
        rel_dev(sample.measured_factor, sample.predicted_factor);
    rec.printed_over_algebra = sample.measured_factor;
    push(records, rec);
  }

  // Phase 3: the four closed-form variants against the algebra path, wide
  // grid.
  const PrefactorPlacement placements[] = {PrefactorPlacement::numerator,
                                           PrefactorPlacement::denominator};
  const PsiAmplitudeExponent exponents[] = {PsiAmplitudeExponent::one,
                                            PsiAmplitudeExponent::two};
  for (auto placement : placements) {
    for (auto exponent : exponents) {
      VariantResult variant;
      variant.placement = placement;
      variant.psi_exponent = exponent;
      summary.variants.push_back(variant);
    }
  }

  const double wr[] = {0.1, 0.4, 0.8, 1.3, 2.0};
  const double wphi[] = {0.2, 0.7, 1.4, 2.2, 2.9};
  const double wtheta[] = {0.0, 0.6, 1.3, 2.5, 3.9, 5.5};
  const double wamp[] = {0.0, 0.4, 1.0, 2.0};
  for (double r : wr) {
    for (double phi : wphi) {
      for (double theta : wtheta) {
        for (double amp_a : wamp) {
          for (double amp_b : wamp) {
            const CoherentInput input(amp_a, amp_b, theta);
            const MomentReport m = moments(r, phi, input);
            const double deriv = mean_derivative(r, phi, input);
            if (std::abs(deriv) <
                options.derivative_floor * std::max(1.0, m.mean)) {
              continue;
            }
            const double alg = m.variance / (deriv * deriv);

            for (auto& variant : summary.variants) {
              const SensitivityPoint cf = closed_form_variant(
                  r, phi, theta, amp_a, amp_b, variant.placement,
                  variant.psi_exponent);
              const double dev = rel_dev(alg, cf.delta_phi_squared);
              if (dev > variant.max_relative_deviation) {
                variant.max_relative_deviation = dev;
              }

              ValidationRecord rec;
              rec.r = r;
              rec.phi = phi;
              rec.theta = theta;
              rec.amp_a = amp_a;
              rec.amp_b = amp_b;
              rec.comparison = variant.name();
              rec.algebra_value = alg;
              rec.other_value = cf.delta_phi_squared;
              rec.relative_deviation = dev;
              push(records, rec);
            }
          }
        }
      }
    }
  }

  std::size_t match_count = 0;
  for (std::size_t i = 0; i < summary.variants.size(); ++i) {
    summary.variants[i].matches =
        summary.variants[i].max_relative_deviation < options.variant_tolerance;
    if (summary.variants[i].matches) {
      summary.matching_variant = i;
      ++match_count;
    }
  }
  if (match_count != 1) summary.matching_variant.reset();

  return summary;
}

}  // namespace clb
