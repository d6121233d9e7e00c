#pragma once

#include "clb/sensitivity.hpp"

namespace clb {

enum class Scheme { coherent_mzi, squeezed_mzi, clb, klauder_vacuum };

struct SchemeCurvePoint {
  double r = 0.0;
  double delta_phi = 0.0;
  Scheme scheme = Scheme::coherent_mzi;
  double photon_budget = 0.0;
};

/// Shot-noise limit 1 / N_Coh.
double coherent_mzi(double n_coh);

/// MZI with one squeezed input, e^{-2r} / N_Coh (valid for
/// N_Coh >> N_Squeezed).
double squeezed_mzi(double r, double n_coh);

/// The coherent-light-boosted chain at its phi = 0, theta = pi/4 operating
/// point; delegates to simple_sensitivity.
SensitivityPoint clb_scheme(double r, double n_coh);

/// Brute-force comparator: the pump light added classically instead,
/// 1 / (n_base + pump_per_pair sinh^2 r).
double pump_boosted_coherent(double r, double n_base, double pump_per_pair);

inline constexpr double kDefaultPumpPerPair = 1e12;

/// What a gain-r boosted interferometer buys against a shot-noise-limited
/// reference of flux n_ligo. The reference is deliberately the simplest
/// possible model of the real instrument.
struct LigoReport {
  double required_n_coh = 0.0;          // flux giving equal sensitivity
  double intensity_reduction_factor = 0.0;  // sinh^2(2r)
  double sensitivity_gain_factor = 0.0;     // sinh(2r)
  double vacuum_equivalent_gain = 0.0;      // arcsinh(sqrt(n_ligo)) / 2
};

LigoReport ligo_report(double r, double n_ligo);

}  // namespace clb
