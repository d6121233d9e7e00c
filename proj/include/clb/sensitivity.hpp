#pragma once

#include <complex>

#include "clb/ladder.hpp"
#include "clb/transform.hpp"

namespace clb {

/// Coherent amplitudes |alpha|, |beta| and their common phase theta.
struct CoherentInput {
  double amp_a = 0.0;
  double amp_b = 0.0;
  double theta = 0.0;

  CoherentInput(double amp_a_, double amp_b_, double theta_);

  static CoherentInput vacuum() { return {0.0, 0.0, 0.0}; }
  /// Equal-split convention: amp_a = amp_b = sqrt(n_coh / 2).
  static CoherentInput equal_split(double n_coh, double theta);

  double n_coh() const { return amp_a * amp_a + amp_b * amp_b; }
  Complex alpha() const { return std::polar(amp_a, theta); }
  Complex beta() const { return std::polar(amp_b, theta); }
};

enum class ComputationPath { algebra, oracle, closed_form };

struct MomentReport {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  ComputationPath path = ComputationPath::algebra;
  double truncation_deficit = 0.0;  // meaningful on the oracle path only
};

struct SensitivityPoint {
  double delta_phi_squared = 0.0;
  double variance = 0.0;
  double mean_derivative = 0.0;
  bool diverged = false;
};

/// Component terms of the published closed-form sensitivity expression,
/// returned alongside the value for diagnosis.
struct ClosedFormTerms {
  double b_term = 0.0;    // 1 + 2|alpha|^2 + 2|beta|^2
  double psi_term = 0.0;  // the Psi expression as printed
  double bracket = 0.0;   // numerator bracket factor
  double brace = 0.0;     // denominator brace factor
};

/// Where the mu^2 nu^2 prefactor of the closed form sits.
enum class PrefactorPlacement { numerator, denominator };

/// Power of |alpha beta| carried by the Psi term (2 as printed, 1 as the
/// cross-validated correction candidate).
enum class PsiAmplitudeExponent { one = 1, two = 2 };

/// Variant shipped by closed_form_reconciled; fixed by the cross-path
/// validation campaign, not assumed. See validate.hpp.
inline constexpr PrefactorPlacement kReconciledPlacement =
    PrefactorPlacement::denominator;
inline constexpr PsiAmplitudeExponent kReconciledPsiExponent =
    PsiAmplitudeExponent::one;

/// Expectation of a normal-ordered expression in the product coherent state
/// |alpha> |beta>.
Complex coherent_expectation(const LadderExpr& x, const CoherentInput& input);

/// Heisenberg-picture substitution: each ladder operator replaced by the
/// linear combination read from the transform's rows, then re-canonicalized.
LadderExpr substitute_modes(const LadderExpr& x, const ModeTransform& m);

/// Total-number operator propagated through the full chain.
LadderExpr propagated_number_operator(double r, double phi);

/// First and second moments of the propagated number operator (algebra path).
MomentReport moments(double r, double phi, const CoherentInput& input);

/// d<N_T>/d phi. The mean is a trigonometric polynomial of harmonic order 1
/// in phi, so the two-point quarter-period difference is exact.
double mean_derivative(double r, double phi, const CoherentInput& input);

/// Standard error-propagation sensitivity Var(N_T) / (d<N_T>/dphi)^2.
SensitivityPoint phase_sensitivity(double r, double phi,
                                   const CoherentInput& input);

/// phi -> 0 limit of the vacuum-seed sensitivity: evaluates at base_phi and
/// base_phi/2 and Richardson-extrapolates the O(phi^2) bias away.
SensitivityPoint vacuum_limit_sensitivity(double r, double base_phi = 1e-4);

/// General evaluator for the closed-form expression family.
SensitivityPoint closed_form_variant(double r, double phi, double theta,
                                     double amp_a, double amp_b,
                                     PrefactorPlacement placement,
                                     PsiAmplitudeExponent psi_exponent,
                                     ClosedFormTerms* terms = nullptr);

/// The published closed form exactly as printed (prefactor in the numerator,
/// Psi quartic in the amplitudes).
SensitivityPoint closed_form_printed(double r, double phi, double theta,
                                     double amp_a, double amp_b,
                                     ClosedFormTerms& terms);

/// The variant selected by the validation campaign as matching the algebra
/// path.
SensitivityPoint closed_form_reconciled(double r, double phi, double theta,
                                        double amp_a, double amp_b);

/// 1 / (N_OPA (N_OPA + 2) N_Coh) with N_OPA = 2 sinh^2 r; the phi = 0,
/// theta = pi/4 operating point.
SensitivityPoint simple_sensitivity(double r, double n_coh);

/// Vacuum-seed limit 1 / sinh^2(2r).
SensitivityPoint klauder_limit(double r);

struct HighGainAsymptote {
  double printed = 0.0;  // e^{-4r} / (2 n_coh), as published
  double direct = 0.0;   // 4 e^{-4r} / n_coh, large-r limit of the closed form
};

/// Both large-gain asymptotes; they differ by a constant factor of 8 and are
/// reported side by side.
HighGainAsymptote high_gain_asymptote(double r, double n_coh);

/// |d<N_T>/dphi| below this threshold flags the point as diverged.
double divergence_threshold(double mean);

}  // namespace clb
