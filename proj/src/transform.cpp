#include "clb/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Matrix4cd commutation_metric() {
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  j(0, 0) = 1.0;
  j(1, 1) = -1.0;
  j(2, 2) = 1.0;
  j(3, 3) = -1.0;
  return j;
}

// Row for ad must be the conjugate of the row for a with columns swapped
// under (a<->ad, b<->bd); same for the b rows.
double conjugation_defect(const Eigen::Matrix4cd& m) {
  static constexpr int pair[4] = {1, 0, 3, 2};
  double worst = 0.0;
  for (int r : {0, 2}) {
    for (int c = 0; c < 4; ++c) {
      const auto d = m(pair[r], pair[c]) - std::conj(m(r, c));
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

}  // namespace

OpaParams::OpaParams(double r, double psi) : gain(r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("OpaParams: gain must be finite and >= 0");
  }
  if (!std::isfinite(psi)) {
    throw std::invalid_argument("OpaParams: pump phase must be finite");
  }
  pump_phase = std::fmod(psi, kTwoPi);
  if (pump_phase < 0.0) pump_phase += kTwoPi;
}

PhaseShift::PhaseShift(double phi_) : phi(phi_) {
  if (!std::isfinite(phi_)) {
    throw std::invalid_argument("PhaseShift: phi must be finite");
  }
}

ModeTransform::ModeTransform(Matrix m) : m_(std::move(m)) {
  // Scale the absolute tolerance with the matrix magnitude so large-gain
  // compositions are not rejected for honest roundoff.
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (bogoliubov_defect() > kTolerance * scale * scale) {
    throw std::invalid_argument(
        "ModeTransform: matrix does not preserve commutation relations");
  }
  if (conjugation_defect(m_) > kTolerance * scale) {
    throw std::invalid_argument(
        "ModeTransform: rows violate the conjugation pairing");
  }
}

ModeTransform ModeTransform::identity() {
  return ModeTransform(Matrix::Identity());
}

double ModeTransform::bogoliubov_defect() const {
  const Eigen::Matrix4cd j = commutation_metric();
  return (m_ * j * m_.adjoint() - j).cwiseAbs().maxCoeff();
}

bool ModeTransform::is_identity(double tol) const {
  return (m_ - Matrix::Identity()).cwiseAbs().maxCoeff() <= tol;
}

ModeTransform opa_transform(const OpaParams& p) {
  const double mu = std::cosh(p.gain);
  const double nu = std::sinh(p.gain);
  const Complex phase = std::polar(1.0, p.pump_phase);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  // a_f  = mu a  + e^{i psi} nu bd
  // b_f  = mu b  + e^{i psi} nu ad
  m(0, 0) = mu;
  m(0, 3) = phase * nu;
  m(1, 1) = mu;
  m(1, 2) = std::conj(phase) * nu;
  m(2, 2) = mu;
  m(2, 1) = phase * nu;
  m(3, 3) = mu;
  m(3, 0) = std::conj(phase) * nu;
  return ModeTransform(m);
}

ModeTransform phase_transform(const PhaseShift& p) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(0, 0) = std::polar(1.0, p.phi);
  m(1, 1) = std::polar(1.0, -p.phi);
  return ModeTransform(m);
}

ModeTransform compose(const ModeTransform& outer, const ModeTransform& inner) {
  return ModeTransform(outer.matrix() * inner.matrix());
}

ModeTransform clb_chain(double r, double phi) {
  const ModeTransform first = opa_transform(OpaParams(r, 0.0));
  const ModeTransform probe = phase_transform(PhaseShift(phi));
  const ModeTransform second = opa_transform(OpaParams(r, std::numbers::pi));
  return compose(second, compose(probe, first));
}

}  // namespace clb
