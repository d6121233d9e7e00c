#pragma once

#include <Eigen/Dense>

#include "clb/ladder.hpp"
#include "clb/sensitivity.hpp"

namespace clb {

/// Per-mode occupation cutoff; the two-mode space has dimension (n_max+1)^2.
struct FockCutoff {
  int n_max = 20;

  explicit FockCutoff(int n);

  int dim1() const { return n_max + 1; }
  int dim2() const { return dim1() * dim1(); }
};

/// State vector on the truncated two-mode space, indexed (n_a, n_b)
/// row-major.
struct TwoModeState {
  Eigen::VectorXcd amplitudes;
  FockCutoff cutoff;
};

struct LadderMatrices {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd a_dagger;
  Eigen::MatrixXcd b;
  Eigen::MatrixXcd b_dagger;
};

/// Standard truncated ladder matrices on the two-mode space.
LadderMatrices ladder_matrices(const FockCutoff& cutoff);

/// Single-mode coherent state e^{-|alpha|^2/2} alpha^n / sqrt(n!),
/// renormalized after truncation. Rejects amp^2 > n_max / 4 (tail safety).
Eigen::VectorXcd coherent_state(double amp, double theta,
                                const FockCutoff& cutoff);

TwoModeState product_coherent_state(const CoherentInput& input,
                                    const FockCutoff& cutoff);

/// Two-mode squeezing unitary exp(xi ad bd - conj(xi) a b) with
/// xi = r e^{i pump_phase}. The phase convention is fixed by calibration
/// against opa_transform: Udag a U = mu a + e^{i psi} nu bd on the
/// truncation-safe subspace.
Eigen::MatrixXcd two_mode_squeezer(double r, double pump_phase,
                                   const FockCutoff& cutoff);

/// Diagonal phase unitary e^{i phi n_a} applied in place.
void apply_phase_shift(TwoModeState& state, double phi);

/// 1 - norm^2 plus the population of the top two occupation levels of either
/// mode; conservative truncation-error proxy.
double truncation_deficit(const TwoModeState& state);

/// Fock-space matrix of a canonical ladder expression (used to cross-check
/// the algebra kernel against plain matrix arithmetic).
Eigen::MatrixXcd expr_matrix(const LadderExpr& x, const FockCutoff& cutoff);

/// Default truncation-error budget.
inline constexpr double kTruncationBudget = 1e-8;
inline constexpr int kMaxCutoff = 60;

/// Runs the full OPA -> phase -> OPA chain at a fixed cutoff. Also returns
/// the final state through `final_state` when non-null.
MomentReport simulate_chain_at(double r, double phi, const CoherentInput& input,
                               const FockCutoff& cutoff,
                               TwoModeState* final_state = nullptr);

/// Adaptive-cutoff simulation: doubles n_max (capped at 60) until the
/// truncation deficit is within budget; throws std::runtime_error naming the
/// deficit when the cap is insufficient.
MomentReport simulate_chain(double r, double phi, const CoherentInput& input,
                            double budget = kTruncationBudget);

/// Reusable simulator for sweeps sharing (r, cutoff): builds the two OPA
/// unitaries once.
class ChainSimulator {
 public:
  ChainSimulator(double r, const FockCutoff& cutoff);

  MomentReport run(double phi, const CoherentInput& input,
                   TwoModeState* final_state = nullptr) const;

  const FockCutoff& cutoff() const { return cutoff_; }

 private:
  FockCutoff cutoff_;
  Eigen::MatrixXcd first_opa_;
  Eigen::MatrixXcd second_opa_;
};

}  // namespace clb
