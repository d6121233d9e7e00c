#include "clb/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace clb {

namespace {

// Single-mode annihilation matrix a|n> = sqrt(n)|n-1>.
Eigen::MatrixXcd single_mode_a(int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(double(n));
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

Eigen::MatrixXcd matrix_power_apply(const Eigen::MatrixXcd& m, unsigned n) {
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < n; ++i) out = out * m;
  return out;
}

}  // namespace

FockCutoff::FockCutoff(int n) : n_max(n) {
  if (n < 4 || n > kMaxCutoff) {
    throw std::invalid_argument("FockCutoff: n_max must be in [4, 60]");
  }
}

LadderMatrices ladder_matrices(const FockCutoff& cutoff) {
  const int d = cutoff.dim1();
  const Eigen::MatrixXcd a1 = single_mode_a(d);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  LadderMatrices m;
  m.a = kron(a1, id);
  m.a_dagger = m.a.adjoint();
  m.b = kron(id, a1);
  m.b_dagger = m.b.adjoint();
  return m;
}

Eigen::VectorXcd coherent_state(double amp, double theta,
                                const FockCutoff& cutoff) {
  if (amp * amp > cutoff.n_max / 4.0) {
    throw std::invalid_argument(
        "coherent_state: amp^2 exceeds the n_max/4 tail-safety bound");
  }
  const int d = cutoff.dim1();
  const Complex alpha = std::polar(amp, theta);
  Eigen::VectorXcd v(d);
  Complex term = 1.0;  // alpha^n / sqrt(n!)
  v(0) = term;
  for (int n = 1; n < d; ++n) {
    term *= alpha / std::sqrt(double(n));
    v(n) = term;
  }
  v *= std::exp(-0.5 * amp * amp);
  v.normalize();
  return v;
}

TwoModeState product_coherent_state(const CoherentInput& input,
                                    const FockCutoff& cutoff) {
  const Eigen::VectorXcd va = coherent_state(input.amp_a, input.theta, cutoff);
  const Eigen::VectorXcd vb = coherent_state(input.amp_b, input.theta, cutoff);
  TwoModeState state{Eigen::VectorXcd(cutoff.dim2()), cutoff};
  const int d = cutoff.dim1();
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; nb < d; ++nb) {
      state.amplitudes(na * d + nb) = va(na) * vb(nb);
    }
  }
  return state;
}

Eigen::MatrixXcd two_mode_squeezer(double r, double pump_phase,
                                   const FockCutoff& cutoff) {
  const LadderMatrices m = ladder_matrices(cutoff);
  const Complex xi = std::polar(r, pump_phase);
  // G = xi ad bd - conj(xi) a b is anti-Hermitian; exponentiate through the
  // Hermitian H = iG.
  const Eigen::MatrixXcd g =
      xi * (m.a_dagger * m.b_dagger) - std::conj(xi) * (m.a * m.b);
  const Eigen::MatrixXcd h = Complex(0.0, 1.0) * g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const auto& vecs = es.eigenvectors();
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (int i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -es.eigenvalues()(i));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

void apply_phase_shift(TwoModeState& state, double phi) {
  const int d = state.cutoff.dim1();
  for (int na = 0; na < d; ++na) {
    const Complex f = std::polar(1.0, phi * na);
    for (int nb = 0; nb < d; ++nb) state.amplitudes(na * d + nb) *= f;
  }
}

double truncation_deficit(const TwoModeState& state) {
  const int d = state.cutoff.dim1();
  double top = 0.0;
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; nb < d; ++nb) {
      if (na >= d - 2 || nb >= d - 2) {
        top += std::norm(state.amplitudes(na * d + nb));
      }
    }
  }
  const double norm2 = state.amplitudes.squaredNorm();
  return std::max(0.0, 1.0 - norm2) + top;
}

Eigen::MatrixXcd expr_matrix(const LadderExpr& x, const FockCutoff& cutoff) {
  const LadderMatrices lm = ladder_matrices(cutoff);
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(cutoff.dim2(), cutoff.dim2());
  for (const auto& [m, c] : x.terms()) {
    Eigen::MatrixXcd term = matrix_power_apply(lm.a_dagger, m.p);
    term = term * matrix_power_apply(lm.a, m.q);
    term = term * matrix_power_apply(lm.b_dagger, m.s);
    term = term * matrix_power_apply(lm.b, m.t);
    out += c * term;
  }
  return out;
}

ChainSimulator::ChainSimulator(double r, const FockCutoff& cutoff)
    : cutoff_(cutoff),
      first_opa_(two_mode_squeezer(r, 0.0, cutoff)),
      second_opa_(first_opa_.adjoint()) {}

MomentReport ChainSimulator::run(double phi, const CoherentInput& input,
                                 TwoModeState* final_state) const {
  TwoModeState state = product_coherent_state(input, cutoff_);
  double deficit = truncation_deficit(state);

  state.amplitudes = first_opa_ * state.amplitudes;
  deficit = std::max(deficit, truncation_deficit(state));
  apply_phase_shift(state, phi);
  state.amplitudes = second_opa_ * state.amplitudes;
  deficit = std::max(deficit, truncation_deficit(state));

  const int d = cutoff_.dim1();
  double mean = 0.0;
  double second = 0.0;
  double norm2 = 0.0;
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; nb < d; ++nb) {
      const double p = std::norm(state.amplitudes(na * d + nb));
      const double n = double(na + nb);
      norm2 += p;
      mean += n * p;
      second += n * n * p;
    }
  }
  mean /= norm2;
  second /= norm2;

  MomentReport report;
  report.path = ComputationPath::oracle;
  report.mean = mean;
  report.second_moment = second;
  report.variance = std::max(0.0, second - mean * mean);
  report.truncation_deficit = deficit;
  if (final_state != nullptr) *final_state = std::move(state);
  return report;
}

MomentReport simulate_chain_at(double r, double phi, const CoherentInput& input,
                               const FockCutoff& cutoff,
                               TwoModeState* final_state) {
  return ChainSimulator(r, cutoff).run(phi, input, final_state);
}

MomentReport simulate_chain(double r, double phi, const CoherentInput& input,
                            double budget) {
  const double max_amp_sq =
      std::max(input.amp_a * input.amp_a, input.amp_b * input.amp_b);
  int n = std::max(8, int(std::ceil(4.0 * max_amp_sq)) + 1);
  n = std::min(n, kMaxCutoff);
  MomentReport report;
  while (true) {
    report = simulate_chain_at(r, phi, input, FockCutoff(n));
    if (report.truncation_deficit < budget) return report;
    if (n >= kMaxCutoff) break;
    n = std::min(2 * n, kMaxCutoff);
  }
  throw std::runtime_error(
      "simulate_chain: truncation budget exceeded at the cutoff cap, deficit " +
      std::to_string(report.truncation_deficit));
}

}  // namespace clb
