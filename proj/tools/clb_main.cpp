// Command-line front end: single-point computation, parameter sweeps,
// figure-data regeneration, the cross-path validation campaign, and the
// LIGO-style intensity report. Emits deterministic CSV/JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clb/fock.hpp"
#include "clb/schemes.hpp"
#include "clb/sensitivity.hpp"
#include "clb/validate.hpp"
#include "clb/version.hpp"

using json = nlohmann::ordered_json;
using namespace clb;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitTolerance = 3;

// Fixed 17-significant-digit scientific formatting keeps identical
// invocations byte-identical across platforms.
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double at(int i) const {
    if (count <= 1) return start;
    return start + (stop - start) * double(i) / double(count - 1);
  }
};

// Accepts "v" or "start:stop:count".
Grid parse_grid(const std::string& text) {
  Grid g;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    g.start = g.stop = std::stod(text);
    return g;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw CLI::ValidationError("grid", "expected value or start:stop:count");
  }
  g.start = std::stod(text.substr(0, c1));
  g.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  g.count = std::stoi(text.substr(c2 + 1));
  if (g.count < 1 || g.start > g.stop) {
    throw CLI::ValidationError("grid", "need count >= 1 and start <= stop");
  }
  return g;
}

struct PointResult {
  double mean = std::nan("");
  double variance = std::nan("");
  double derivative = std::nan("");
  double delta_phi_squared = std::nan("");
  bool diverged = false;
  std::optional<double> truncation_deficit;
};

PointResult evaluate_point(const std::string& method, double r, double phi,
                           double theta, double amp_a, double amp_b) {
  PointResult out;
  if (method == "algebra") {
    const CoherentInput input(amp_a, amp_b, theta);
    const MomentReport m = moments(r, phi, input);
    const SensitivityPoint p = phase_sensitivity(r, phi, input);
    out.mean = m.mean;
    out.variance = m.variance;
    out.derivative = p.mean_derivative;
    out.delta_phi_squared = p.delta_phi_squared;
    out.diverged = p.diverged;
  } else if (method == "oracle") {
    const CoherentInput input(amp_a, amp_b, theta);
    const MomentReport m = simulate_chain(r, phi, input);
    out.mean = m.mean;
    out.variance = m.variance;
    out.truncation_deficit = m.truncation_deficit;
    // The phase derivative and sensitivity come from the algebra path; the
    // oracle contributes the moments it independently verifies.
    const double deriv = mean_derivative(r, phi, input);
    out.derivative = deriv;
    if (std::abs(deriv) < divergence_threshold(m.mean)) {
      out.diverged = true;
      out.delta_phi_squared = std::numeric_limits<double>::infinity();
    } else {
      out.delta_phi_squared = m.variance / (deriv * deriv);
    }
  } else if (method == "printed") {
    ClosedFormTerms terms;
    const SensitivityPoint p =
        closed_form_printed(r, phi, theta, amp_a, amp_b, terms);
    out.derivative = p.mean_derivative;
    out.delta_phi_squared = p.delta_phi_squared;
    out.diverged = p.diverged;
  } else if (method == "reconciled") {
    const SensitivityPoint p =
        closed_form_reconciled(r, phi, theta, amp_a, amp_b);
    out.derivative = p.mean_derivative;
    out.delta_phi_squared = p.delta_phi_squared;
    out.diverged = p.diverged;
  } else if (method == "simple") {
    const double n_coh = amp_a * amp_a + amp_b * amp_b;
    const SensitivityPoint p = simple_sensitivity(r, n_coh);
    out.delta_phi_squared = p.delta_phi_squared;
    out.diverged = p.diverged;
  } else {
    throw CLI::ValidationError("--method", "unknown method " + method);
  }
  return out;
}

struct CommonArgs {
  std::string method = "algebra";
  double r = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  double amp_a = 0.0;
  double amp_b = 0.0;
  double n_coh = -1.0;

  // --n-coh overrides the amplitudes with the equal-split convention
  // amp_a = amp_b = sqrt(n_coh / 2).
  void resolve() {
    if (n_coh >= 0.0) {
      amp_a = amp_b = std::sqrt(n_coh / 2.0);
    }
  }
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--method", args.method,
                  "algebra|oracle|printed|reconciled|simple")
      ->envname("CLB_METHOD");
  cmd->add_option("--r", args.r, "OPA gain (squeezing parameter)")
      ->envname("CLB_R");
  cmd->add_option("--phi", args.phi, "probe phase, radians")
      ->envname("CLB_PHI");
  cmd->add_option("--theta", args.theta, "common input phase, radians")
      ->envname("CLB_THETA");
  cmd->add_option("--amp-a", args.amp_a, "|alpha|")->envname("CLB_AMP_A");
  cmd->add_option("--amp-b", args.amp_b, "|beta|")->envname("CLB_AMP_B");
  cmd->add_option("--n-coh", args.n_coh,
                  "total coherent flux; sets amp_a = amp_b = sqrt(n_coh/2)")
      ->envname("CLB_N_COH");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  return file;
}

int cmd_compute(const CommonArgs& args) {
  const PointResult p = evaluate_point(args.method, args.r, args.phi,
                                       args.theta, args.amp_a, args.amp_b);
  json out;
  out["tool_version"] = kToolVersion;
  out["method"] = args.method;
  out["r"] = args.r;
  out["phi"] = args.phi;
  out["theta"] = args.theta;
  out["amp_a"] = args.amp_a;
  out["amp_b"] = args.amp_b;
  out["mean"] = fmt(p.mean);
  out["variance"] = fmt(p.variance);
  out["derivative"] = fmt(p.derivative);
  out["delta_phi_squared"] = fmt(p.delta_phi_squared);
  out["diverged"] = p.diverged;
  if (p.truncation_deficit) {
    out["truncation_deficit"] = fmt(*p.truncation_deficit);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& r_spec,
              const std::string& phi_spec, const std::string& theta_spec,
              const std::string& amp_a_spec, const std::string& amp_b_spec,
              std::size_t cap, const std::string& out_path) {
  const Grid gr = parse_grid(r_spec);
  const Grid gphi = parse_grid(phi_spec);
  const Grid gtheta = parse_grid(theta_spec);
  const Grid ga = parse_grid(amp_a_spec);
  const Grid gb = parse_grid(amp_b_spec);

  const std::size_t total = std::size_t(gr.count) * gphi.count *
                            gtheta.count * ga.count * gb.count;
  if (total > cap) {
    throw CLI::ValidationError("sweep", "grid size exceeds the cap");
  }

  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  os << "index,r,phi,theta_rad,amp_a,amp_b,mean_photons,variance_photons2,"
        "derivative_photons_per_rad,delta_phi_squared_rad2,diverged\n";
  std::size_t index = 0;
  for (int ir = 0; ir < gr.count; ++ir)
    for (int ip = 0; ip < gphi.count; ++ip)
      for (int it = 0; it < gtheta.count; ++it)
        for (int ia = 0; ia < ga.count; ++ia)
          for (int ib = 0; ib < gb.count; ++ib) {
            const double r = gr.at(ir);
            const double phi = gphi.at(ip);
            const double theta = gtheta.at(it);
            const double aa = ga.at(ia);
            const double ab = gb.at(ib);
            const PointResult p =
                evaluate_point(args.method, r, phi, theta, aa, ab);
            os << index << ',' << fmt(r) << ',' << fmt(phi) << ','
               << fmt(theta) << ',' << fmt(aa) << ',' << fmt(ab) << ','
               << fmt(p.mean) << ',' << fmt(p.variance) << ','
               << fmt(p.derivative) << ',' << fmt(p.delta_phi_squared) << ','
               << (p.diverged ? 1 : 0) << '\n';
            ++index;
          }
  return 0;
}

// Shared phi grid for fig2/fig3 so the theta = pi/4 row of fig2 coincides
// with the r = 0.5 slice of fig3.
std::vector<double> figure_phi_grid() {
  std::vector<double> phis;
  for (int k = 1; k <= 127; ++k) {
    phis.push_back(double(k) * std::numbers::pi / 128.0);
  }
  return phis;
}

int cmd_figure(const std::string& name, const std::string& out_path) {
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  if (name == "fig2") {
    // Sensitivity surface over (phi, theta) at r = 0.5 with the coherent
    // flux equal to the vacuum-seed squeezed flux, split equally.
    const double r = 0.5;
    const double n_coh = 2.0 * std::pow(std::sinh(r), 2);
    os << "phi_rad,theta_rad,delta_phi_squared_rad2\n";
    for (int j = 0; j <= 64; ++j) {
      const double theta = double(j) * std::numbers::pi / 32.0;
      for (double phi : figure_phi_grid()) {
        const CoherentInput input = CoherentInput::equal_split(n_coh, theta);
        const SensitivityPoint p = phase_sensitivity(r, phi, input);
        os << fmt(phi) << ',' << fmt(theta) << ','
           << fmt(p.delta_phi_squared) << '\n';
      }
    }
  } else if (name == "fig3") {
    os << "r,phi_rad,delta_phi_squared_rad2\n";
    for (double r : {0.5, 1.0, 1.5}) {
      const double n_coh = 2.0 * std::pow(std::sinh(r), 2);
      for (double phi : figure_phi_grid()) {
        const CoherentInput input =
            CoherentInput::equal_split(n_coh, std::numbers::pi / 4.0);
        const SensitivityPoint p = phase_sensitivity(r, phi, input);
        os << fmt(r) << ',' << fmt(phi) << ',' << fmt(p.delta_phi_squared)
           << '\n';
      }
    }
  } else if (name == "fig4") {
    // Delta phi (not squared) for the three schemes under the captioned
    // photon budgets.
    os << "r,delta_phi_squeezed_mzi_rad,delta_phi_clb_rad,"
          "delta_phi_pump_boosted_rad\n";
    for (int k = 0; k <= 60; ++k) {
      const double r = double(k) * 0.05;
      const double dashed = std::sqrt(squeezed_mzi(r, 1e13));
      const SensitivityPoint solid = clb_scheme(r, 1e13);
      const double dotted =
          std::sqrt(pump_boosted_coherent(r, 1e13, kDefaultPumpPerPair));
      os << fmt(r) << ',' << fmt(dashed) << ','
         << (solid.diverged ? "nan" : fmt(std::sqrt(solid.delta_phi_squared)))
         << ',' << fmt(dotted) << '\n';
    }
  } else {
    throw CLI::ValidationError("figure", "unknown figure " + name);
  }
  return 0;
}

int cmd_validate(double oracle_tol, double variant_tol,
                 const std::string& records_path) {
  ValidationOptions options;
  options.oracle_tolerance = oracle_tol;
  options.variant_tolerance = variant_tol;

  std::vector<ValidationRecord> records;
  const ValidationSummary summary = run_validation(
      options, records_path.empty() ? nullptr : &records);

  if (!records_path.empty()) {
    std::ofstream file(records_path);
    if (!file) {
      throw std::runtime_error("cannot open records file " + records_path);
    }
    file << "comparison,r,phi,theta_rad,amp_a,amp_b,algebra_value,"
            "other_value,relative_deviation,printed_over_algebra,"
            "truncation_deficit\n";
    for (const auto& rec : records) {
      file << rec.comparison << ',' << fmt(rec.r) << ',' << fmt(rec.phi)
           << ',' << fmt(rec.theta) << ',' << fmt(rec.amp_a) << ','
           << fmt(rec.amp_b) << ',' << fmt(rec.algebra_value) << ','
           << fmt(rec.other_value) << ',' << fmt(rec.relative_deviation)
           << ',' << fmt(rec.printed_over_algebra) << ','
           << fmt(rec.truncation_deficit) << '\n';
    }
  }

  json out;
  out["tool_version"] = kToolVersion;
  out["oracle_tolerance"] = fmt(summary.oracle_tolerance);
  out["max_algebra_oracle_deviation"] =
      fmt(summary.max_algebra_oracle_deviation);
  out["oracle_within_tolerance"] = summary.oracle_within_tolerance;
  out["worst_oracle_point"] = {
      {"comparison", summary.worst_oracle_point.comparison},
      {"r", summary.worst_oracle_point.r},
      {"phi", summary.worst_oracle_point.phi},
      {"theta", summary.worst_oracle_point.theta},
      {"amp_a", summary.worst_oracle_point.amp_a},
      {"relative_deviation",
       fmt(summary.worst_oracle_point.relative_deviation)},
  };

  json factors = json::array();
  for (const auto& sample : summary.vacuum_factors) {
    factors.push_back({{"r", sample.r},
                       {"measured_printed_over_algebra",
                        fmt(sample.measured_factor)},
                       {"predicted_mu4nu4", fmt(sample.predicted_factor)}});
  }
  out["vacuum_factor_scan"] = factors;

  json variants = json::array();
  for (const auto& variant : summary.variants) {
    variants.push_back({{"variant", variant.name()},
                        {"max_relative_deviation",
                         fmt(variant.max_relative_deviation)},
                        {"matches", variant.matches}});
  }
  out["variant_tolerance"] = fmt(summary.variant_tolerance);
  out["variants"] = variants;
  out["matching_variant"] =
      summary.matching_variant
          ? json(summary.variants[*summary.matching_variant].name())
          : json("none");

  std::cout << out.dump(2) << "\n";
  return summary.oracle_within_tolerance ? 0 : kExitTolerance;
}

int cmd_ligo(double r, double n_ligo) {
  const LigoReport report = ligo_report(r, n_ligo);
  json out;
  out["tool_version"] = kToolVersion;
  out["method"] = "ligo";
  out["r"] = r;
  out["n_ligo"] = fmt(n_ligo);
  out["required_n_coh"] = fmt(report.required_n_coh);
  out["intensity_reduction_factor"] = fmt(report.intensity_reduction_factor);
  out["sensitivity_gain_factor"] = fmt(report.sensitivity_gain_factor);
  out["vacuum_equivalent_gain"] = fmt(report.vacuum_equivalent_gain);
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "clb: phase-sensitivity calculator for a coherent-seeded SU(1,1) "
      "interferometer.\nConfiguration precedence: flags > CLB_* environment "
      "variables > defaults."};
  app.require_subcommand(1);

  CommonArgs compute_args;
  auto* compute = app.add_subcommand(
      "compute", "single-point moments and sensitivity (JSON)");
  add_common_flags(compute, compute_args);

  CommonArgs sweep_args;
  std::string r_spec = "1", phi_spec = "0", theta_spec = "0",
              amp_a_spec = "0", amp_b_spec = "0", sweep_out;
  std::size_t sweep_cap = 1000000;
  auto* sweep = app.add_subcommand(
      "sweep", "parameter-grid sweep (CSV; each grid is value or "
               "start:stop:count)");
  sweep->add_option("--method", sweep_args.method,
                    "algebra|oracle|printed|reconciled|simple")
      ->envname("CLB_METHOD");
  sweep->add_option("--r", r_spec, "gain grid")->envname("CLB_R");
  sweep->add_option("--phi", phi_spec, "probe-phase grid")->envname("CLB_PHI");
  sweep->add_option("--theta", theta_spec, "input-phase grid")
      ->envname("CLB_THETA");
  sweep->add_option("--amp-a", amp_a_spec, "|alpha| grid")
      ->envname("CLB_AMP_A");
  sweep->add_option("--amp-b", amp_b_spec, "|beta| grid")
      ->envname("CLB_AMP_B");
  sweep->add_option("--cap", sweep_cap, "maximum grid size")
      ->envname("CLB_SWEEP_CAP");
  sweep->add_option("--output", sweep_out, "CSV path (default stdout)");

  std::string figure_name, figure_out;
  auto* figure =
      app.add_subcommand("figure", "regenerate plotted curve data (CSV)");
  figure->add_option("name", figure_name, "fig2|fig3|fig4")->required();
  figure->add_option("--output", figure_out, "CSV path (default stdout)");

  double oracle_tol = 1e-6, variant_tol = 1e-9;
  std::string records_path;
  auto* validate = app.add_subcommand(
      "validate",
      "cross-path validation campaign (JSON summary; exit 3 on tolerance "
      "failure)");
  validate->add_option("--oracle-tolerance", oracle_tol,
                       "algebra-vs-oracle relative tolerance")
      ->envname("CLB_ORACLE_TOLERANCE");
  validate->add_option("--variant-tolerance", variant_tol,
                       "closed-form-variant match tolerance")
      ->envname("CLB_VARIANT_TOLERANCE");
  validate->add_option("--records", records_path,
                       "write per-point records CSV to this path");

  double ligo_r = 3.0, ligo_n = 1e23;
  auto* ligo = app.add_subcommand(
      "ligo", "equal-sensitivity intensity report against a shot-noise "
              "reference (JSON)");
  ligo->add_option("--r", ligo_r, "OPA gain")->envname("CLB_R");
  ligo->add_option("--n-ligo", ligo_n, "reference photon flux")
      ->envname("CLB_N_LIGO");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (compute->parsed()) {
      compute_args.resolve();
      return cmd_compute(compute_args);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_args, r_spec, phi_spec, theta_spec, amp_a_spec,
                       amp_b_spec, sweep_cap, sweep_out);
    }
    if (figure->parsed()) return cmd_figure(figure_name, figure_out);
    if (validate->parsed()) {
      return cmd_validate(oracle_tol, variant_tol, records_path);
    }
    if (ligo->parsed()) return cmd_ligo(ligo_r, ligo_n);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
