#pragma once

#include <Eigen/Dense>
#include <complex>

namespace clb {

using Complex = std::complex<double>;

/// Optical parametric amplifier parameters: squeezing gain r >= 0 and pump
/// phase psi, stored reduced to [0, 2pi).
struct OpaParams {
  double gain = 0.0;
  double pump_phase = 0.0;

  OpaParams(double r, double psi);
};

/// Probe phase phi, applied to mode a only.
struct PhaseShift {
  double phi = 0.0;
  explicit PhaseShift(double phi_);
};

/// 4x4 complex matrix acting on the operator column (a, ad, b, bd); rows give
/// output operators as linear combinations of input operators. Constructors
/// and compose() enforce the Bogoliubov structure.
class ModeTransform {
 public:
  using Matrix = Eigen::Matrix4cd;

  static constexpr double kTolerance = 1e-12;

  /// Wraps a matrix, rejecting it unless it preserves commutation relations
  /// (M J Mdag = J, J = diag(+1,-1,+1,-1)) and the row conjugation pairing.
  explicit ModeTransform(Matrix m);

  static ModeTransform identity();

  const Matrix& matrix() const { return m_; }

  /// Elementwise deviation of M J Mdag from J.
  double bogoliubov_defect() const;
  bool is_identity(double tol = kTolerance) const;

 private:
  Matrix m_;
};

/// Two-mode squeezer matrix: mu = cosh r on the diagonal, pump-phased nu on
/// the anti-diagonal. pump_phase = 0 gives the first-OPA matrix, pi the
/// second (nu negated).
ModeTransform opa_transform(const OpaParams& p);

/// diag(e^{i phi}, e^{-i phi}, 1, 1).
ModeTransform phase_transform(const PhaseShift& p);

/// Matrix product outer * inner; validates both operands and the result.
ModeTransform compose(const ModeTransform& outer, const ModeTransform& inner);

/// Full chain: second OPA (pump phase pi) after the probe phase after the
/// first OPA. Identity at phi = 2 pi n.
ModeTransform clb_chain(double r, double phi);

}  // namespace clb
