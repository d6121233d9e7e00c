#include "clb/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace clb {

double coherent_mzi(double n_coh) {
  if (!(n_coh > 0.0)) {
    throw std::invalid_argument("coherent_mzi: photon budget must be > 0");
  }
  return 1.0 / n_coh;
}

double squeezed_mzi(double r, double n_coh) {
  if (!(n_coh > 0.0)) {
    throw std::invalid_argument("squeezed_mzi: photon budget must be > 0");
  }
  return std::exp(-2.0 * r) / n_coh;
}

SensitivityPoint clb_scheme(double r, double n_coh) {
  return simple_sensitivity(r, n_coh);
}

double pump_boosted_coherent(double r, double n_base, double pump_per_pair) {
  if (!(n_base > 0.0) || !(pump_per_pair > 0.0)) {
    throw std::invalid_argument(
        "pump_boosted_coherent: budgets must be > 0");
  }
  return 1.0 / (n_base + pump_per_pair * std::pow(std::sinh(r), 2));
}

LigoReport ligo_report(double r, double n_ligo) {
  if (!(r > 0.0) || !(n_ligo > 0.0)) {
    throw std::invalid_argument("ligo_report: r and n_ligo must be > 0");
  }
  LigoReport report;
  const double s = std::sinh(2.0 * r);
  report.required_n_coh = n_ligo / (s * s);
  report.intensity_reduction_factor = s * s;
  report.sensitivity_gain_factor = s;
  report.vacuum_equivalent_gain = std::asinh(std::sqrt(n_ligo)) / 2.0;
  return report;
}

}  // namespace clb
