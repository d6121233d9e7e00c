#include "clb/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace clb {

namespace {

constexpr double kDivergenceFloor = 1e-30;

// Powers of a single-operator substitution image, built by repeated
// normal-ordered multiplication.
LadderExpr expr_power(const LadderExpr& base, unsigned n) {
  LadderExpr out = LadderExpr::constant(1.0);
  for (unsigned i = 0; i < n; ++i) out = multiply(out, base);
  return out;
}

// std::pow(complex) goes through exp/log and returns NaN for 0^0.
Complex int_pow(Complex base, unsigned n) {
  Complex out = 1.0;
  for (unsigned i = 0; i < n; ++i) out *= base;
  return out;
}

}  // namespace

CoherentInput::CoherentInput(double amp_a_, double amp_b_, double theta_)
    : amp_a(amp_a_), amp_b(amp_b_), theta(theta_) {
  if (!(amp_a >= 0.0) || !(amp_b >= 0.0) || !std::isfinite(amp_a) ||
      !std::isfinite(amp_b) || !std::isfinite(theta)) {
    throw std::invalid_argument(
        "CoherentInput: amplitudes must be finite and >= 0, theta finite");
  }
}

CoherentInput CoherentInput::equal_split(double n_coh, double theta) {
  if (!(n_coh >= 0.0)) {
    throw std::invalid_argument("equal_split: n_coh must be >= 0");
  }
  const double amp = std::sqrt(n_coh / 2.0);
  return {amp, amp, theta};
}

Complex coherent_expectation(const LadderExpr& x, const CoherentInput& input) {
  const Complex alpha = input.alpha();
  const Complex beta = input.beta();
  Complex sum = 0.0;
  for (const auto& [m, c] : x.terms()) {
    sum += c * int_pow(std::conj(alpha), m.p) * int_pow(alpha, m.q) *
           int_pow(std::conj(beta), m.s) * int_pow(beta, m.t);
  }
  return sum;
}

LadderExpr substitute_modes(const LadderExpr& x, const ModeTransform& m) {
  // ModeTransform construction already guarantees commutation preservation;
  // re-check here so a hand-built matrix cannot corrupt downstream moments.
  const double scale = std::max(1.0, m.matrix().cwiseAbs().maxCoeff());
  if (m.bogoliubov_defect() >
      ModeTransform::kTolerance * scale * scale) {
    throw std::invalid_argument(
        "substitute_modes: transform fails commutation preservation");
  }

  // Images of (a, ad, b, bd) under the rows of m.
  const LadderExpr basis[4] = {LadderExpr::a(), LadderExpr::a_dag(),
                               LadderExpr::b(), LadderExpr::b_dag()};
  LadderExpr image[4];
  for (int row = 0; row < 4; ++row) {
    LadderExpr e;
    for (int col = 0; col < 4; ++col) {
      const Complex c = m.matrix()(row, col);
      if (c != Complex(0.0)) e = e + basis[col] * c;
    }
    image[row] = e;
  }

  LadderExpr result;
  for (const auto& [mono, coeff] : x.terms()) {
    LadderExpr term = LadderExpr::constant(coeff);
    term = multiply(term, expr_power(image[1], mono.p));
    term = multiply(term, expr_power(image[0], mono.q));
    term = multiply(term, expr_power(image[3], mono.s));
    term = multiply(term, expr_power(image[2], mono.t));
    result = result + term;
  }
  return result;
}

LadderExpr propagated_number_operator(double r, double phi) {
  return substitute_modes(LadderExpr::total_number(), clb_chain(r, phi));
}

MomentReport moments(double r, double phi, const CoherentInput& input) {
  const LadderExpr n_prop = propagated_number_operator(r, phi);
  const LadderExpr n_prop_sq = multiply(n_prop, n_prop);

  MomentReport report;
  report.path = ComputationPath::algebra;
  report.mean = coherent_expectation(n_prop, input).real();
  report.second_moment = coherent_expectation(n_prop_sq, input).real();
  report.variance = report.second_moment - report.mean * report.mean;
  if (report.variance < 0.0) {
    if (report.variance < -1e-9 * std::max(1.0, report.second_moment)) {
      throw std::logic_error("moments: variance negative beyond tolerance");
    }
    report.variance = 0.0;
  }
  return report;
}

double mean_derivative(double r, double phi, const CoherentInput& input) {
  // <N_T>(phi) = c0 + c1 cos phi + s1 sin phi for this chain, so
  // (f(phi + pi/2) - f(phi - pi/2)) / 2 is the exact derivative.
  const double h = std::numbers::pi / 2.0;
  const double plus = moments(r, phi + h, input).mean;
  const double minus = moments(r, phi - h, input).mean;
  return 0.5 * (plus - minus);
}

double divergence_threshold(double mean) {
  return kDivergenceFloor * std::max(1.0, std::abs(mean));
}

SensitivityPoint phase_sensitivity(double r, double phi,
                                   const CoherentInput& input) {
  const MomentReport m = moments(r, phi, input);
  const double deriv = mean_derivative(r, phi, input);

  SensitivityPoint point;
  point.variance = m.variance;
  point.mean_derivative = deriv;
  if (std::abs(deriv) < divergence_threshold(m.mean)) {
    point.diverged = true;
    point.delta_phi_squared = std::numeric_limits<double>::infinity();
  } else {
    point.delta_phi_squared = m.variance / (deriv * deriv);
  }
  return point;
}

SensitivityPoint vacuum_limit_sensitivity(double r, double base_phi) {
  const CoherentInput vac = CoherentInput::vacuum();
  const SensitivityPoint coarse = phase_sensitivity(r, base_phi, vac);
  const SensitivityPoint fine = phase_sensitivity(r, base_phi / 2.0, vac);
  if (coarse.diverged || fine.diverged) return coarse;

  SensitivityPoint point = fine;
  // Delta phi^2 is even in phi: f(h) = f0 + c h^2 + O(h^4).
  point.delta_phi_squared =
      (4.0 * fine.delta_phi_squared - coarse.delta_phi_squared) / 3.0;
  return point;
}

SensitivityPoint closed_form_variant(double r, double phi, double theta,
                                     double amp_a, double amp_b,
                                     PrefactorPlacement placement,
                                     PsiAmplitudeExponent psi_exponent,
                                     ClosedFormTerms* terms_out) {
  const double mu = std::cosh(r);
  const double nu = std::sinh(r);
  const double aa = amp_a * amp_a;
  const double bb = amp_b * amp_b;
  const double ab = amp_a * amp_b;  // |alpha beta|
  const double half = 0.5 * phi;

  ClosedFormTerms terms;
  terms.b_term = 1.0 + 2.0 * aa + 2.0 * bb;
  terms.bracket = 1.0 + 4.0 * std::cos(phi) + 3.0 * std::cos(2.0 * phi) +
                  8.0 * std::cosh(8.0 * r) * std::pow(std::sin(half), 4) +
                  8.0 * std::cosh(4.0 * r) * std::pow(std::sin(phi), 2);

  const double psi_amp =
      psi_exponent == PsiAmplitudeExponent::two ? ab * ab : ab;
  terms.psi_term =
      32.0 * psi_amp *
      (std::sin(2.0 * theta) * std::sinh(2.0 * r) *
           (2.0 * std::pow(std::cosh(2.0 * r), 2) * std::sin(phi) -
            std::sin(2.0 * phi) * std::pow(std::sinh(2.0 * r), 2)) +
       2.0 * std::cos(2.0 * theta) * std::pow(std::sin(half), 2) *
           std::sinh(4.0 * r) *
           (std::pow(std::cosh(2.0 * r), 2) -
            std::cos(phi) * std::pow(std::sinh(2.0 * r), 2)));

  terms.brace = ab * (mu * mu * std::sin(2.0 * theta + phi) -
                      nu * nu * std::sin(2.0 * theta - phi)) +
                (1.0 + aa + bb) * mu * nu * std::sin(phi);

  if (terms_out != nullptr) *terms_out = terms;

  const double core = terms.b_term * terms.bracket + terms.psi_term - 8.0;
  const double prefactor = mu * mu * nu * nu;

  SensitivityPoint point;
  double numerator = core;
  double denominator = 256.0 * terms.brace * terms.brace;
  if (placement == PrefactorPlacement::numerator) {
    numerator *= prefactor;
    point.mean_derivative = 16.0 * terms.brace;
  } else {
    denominator *= prefactor;
    point.mean_derivative = 16.0 * mu * nu * terms.brace;
  }
  // The closed form has no independent variance/derivative split; report the
  // numerator and the signed root of the denominator scale for diagnosis.
  point.variance = numerator;
  if (denominator == 0.0) {
    point.diverged = true;
    point.delta_phi_squared = std::numeric_limits<double>::infinity();
  } else {
    point.delta_phi_squared = numerator / denominator;
  }
  return point;
}

SensitivityPoint closed_form_printed(double r, double phi, double theta,
                                     double amp_a, double amp_b,
                                     ClosedFormTerms& terms) {
  return closed_form_variant(r, phi, theta, amp_a, amp_b,
                             PrefactorPlacement::numerator,
                             PsiAmplitudeExponent::two, &terms);
}

SensitivityPoint closed_form_reconciled(double r, double phi, double theta,
                                        double amp_a, double amp_b) {
  return closed_form_variant(r, phi, theta, amp_a, amp_b,
                             kReconciledPlacement, kReconciledPsiExponent);
}

SensitivityPoint simple_sensitivity(double r, double n_coh) {
  SensitivityPoint point;
  if (r <= 0.0 || n_coh <= 0.0) {
    point.diverged = true;
    point.delta_phi_squared = std::numeric_limits<double>::infinity();
    return point;
  }
  const double n_opa = 2.0 * std::pow(std::sinh(r), 2);
  point.delta_phi_squared = 1.0 / (n_opa * (n_opa + 2.0) * n_coh);
  return point;
}

SensitivityPoint klauder_limit(double r) {
  SensitivityPoint point;
  if (r <= 0.0) {
    point.diverged = true;
    point.delta_phi_squared = std::numeric_limits<double>::infinity();
    return point;
  }
  point.delta_phi_squared = 1.0 / std::pow(std::sinh(2.0 * r), 2);
  return point;
}

HighGainAsymptote high_gain_asymptote(double r, double n_coh) {
  HighGainAsymptote out;
  out.printed = std::exp(-4.0 * r) / (2.0 * n_coh);
  out.direct = 4.0 * std::exp(-4.0 * r) / n_coh;
  return out;
}

}  // namespace clb
