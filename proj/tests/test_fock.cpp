#include <cmath>
#include <numbers>

#include "doctest.h"

#include "clb/fock.hpp"

using namespace clb;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("ladder matrices act as expected on low states") {
  const FockCutoff cutoff(6);
  const LadderMatrices m = ladder_matrices(cutoff);
  const int d = cutoff.dim1();

  // a |1,0> = |0,0>
  Eigen::VectorXcd one = Eigen::VectorXcd::Zero(cutoff.dim2());
  one(1 * d + 0) = 1.0;
  const Eigen::VectorXcd lowered = m.a * one;
  CHECK(std::abs(lowered(0) - Complex(1.0)) < 1e-15);
  CHECK(lowered.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));

  // number eigenvalues
  const Eigen::MatrixXcd num = m.a_dagger * m.a;
  for (int n = 0; n < d; ++n) {
    CHECK(std::abs(num(n * d, n * d) - Complex(n)) < 1e-12);
  }

  // [a, ad] = 1 away from the truncation corner
  const Eigen::MatrixXcd comm = m.a * m.a_dagger - m.a_dagger * m.a;
  for (int na = 0; na < d - 1; ++na) {
    CHECK(std::abs(comm(na * d, na * d) - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("coherent state statistics") {
  const FockCutoff cutoff(30);
  const Eigen::VectorXcd v = coherent_state(1.0, 0.3, cutoff);
  double mean = 0.0, second = 0.0;
  for (int n = 0; n <= cutoff.n_max; ++n) {
    const double p = std::norm(v(n));
    mean += n * p;
    second += double(n) * n * p;
  }
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(second - mean * mean == doctest::Approx(1.0).epsilon(1e-10));

  // eigenvalue property <a> = alpha
  const Complex alpha = std::polar(1.0, 0.3);
  Complex a_mean = 0.0;
  for (int n = 1; n <= cutoff.n_max; ++n) {
    a_mean += std::conj(v(n - 1)) * std::sqrt(double(n)) * v(n);
  }
  CHECK(std::abs(a_mean - alpha) < 1e-10);
}

TEST_CASE("vacuum is the zero-amplitude coherent state") {
  const FockCutoff cutoff(8);
  const Eigen::VectorXcd v = coherent_state(0.0, 0.0, cutoff);
  CHECK(std::abs(v(0) - Complex(1.0)) < 1e-15);
  CHECK(v.tail(cutoff.n_max).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tail-safety precondition is enforced") {
  CHECK_THROWS_AS(coherent_state(2.0, 0.0, FockCutoff(8)),
                  std::invalid_argument);
}

TEST_CASE("squeezer at zero gain is the identity") {
  const FockCutoff cutoff(6);
  const Eigen::MatrixXcd u = two_mode_squeezer(0.0, 0.0, cutoff);
  CHECK((u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("squeezer with pump phase pi is the inverse of phase 0") {
  const FockCutoff cutoff(12);
  const Eigen::MatrixXcd u0 = two_mode_squeezer(0.4, 0.0, cutoff);
  const Eigen::MatrixXcd upi = two_mode_squeezer(0.4, kPi, cutoff);
  CHECK((upi - u0.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("squeezer unitarity on the safe subspace") {
  const FockCutoff cutoff(16);
  const Eigen::MatrixXcd u = two_mode_squeezer(0.4, 0.7, cutoff);
  const Eigen::MatrixXcd defect =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  const int d = cutoff.dim1();
  double worst = 0.0;
  for (int i = 0; i < defect.rows(); ++i) {
    for (int j = 0; j < defect.cols(); ++j) {
      if (i / d <= d - 5 && i % d <= d - 5 && j / d <= d - 5 &&
          j % d <= d - 5) {
        worst = std::max(worst, std::abs(defect(i, j)));
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("calibration: conjugated action reproduces the mode transform") {
  // Udag a U must equal mu a + e^{i psi} nu bd on columns well below the
  // cutoff; this pins the generator phase convention to the matrix
  // convention. Leakage grows fast with occupation (the pair amplitude
  // scales like tanh(r) * n), so only low-occupation columns are safe.
  const FockCutoff cutoff(30);
  const LadderMatrices lm = ladder_matrices(cutoff);
  for (double psi : {0.0, kPi, 0.9}) {
    const double r = 0.3;
    const Eigen::MatrixXcd u = two_mode_squeezer(r, psi, cutoff);
    const Eigen::MatrixXcd conjugated = u.adjoint() * lm.a * u;
    const int d = cutoff.dim1();
    const Eigen::MatrixXcd expected =
        std::cosh(r) * lm.a +
        std::polar(std::sinh(r), psi) * lm.b_dagger;
    double worst = 0.0;
    for (int j = 0; j < conjugated.cols(); ++j) {
      if (j / d > 4 || j % d > 4) continue;
      worst = std::max(worst,
                       (conjugated.col(j) - expected.col(j)).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("vacuum through the squeezer emits 2 sinh^2 r photons") {
  const double r = 0.3;
  const FockCutoff cutoff(16);
  const Eigen::MatrixXcd u = two_mode_squeezer(r, 0.0, cutoff);
  TwoModeState state{Eigen::VectorXcd::Zero(cutoff.dim2()), cutoff};
  state.amplitudes(0) = 1.0;
  state.amplitudes = u * state.amplitudes;
  const int d = cutoff.dim1();
  double mean = 0.0;
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; nb < d; ++nb) {
      mean += (na + nb) * std::norm(state.amplitudes(na * d + nb));
    }
  }
  CHECK(mean == doctest::Approx(2.0 * std::pow(std::sinh(r), 2))
                    .epsilon(1e-8));
}

TEST_CASE("truncation deficit behaves") {
  const FockCutoff cutoff(30);
  TwoModeState vac{Eigen::VectorXcd::Zero(cutoff.dim2()), cutoff};
  vac.amplitudes(0) = 1.0;
  CHECK(truncation_deficit(vac) == 0.0);

  const CoherentInput in(1.0, 1.0, 0.0);
  const TwoModeState coh = product_coherent_state(in, cutoff);
  // normalization rounding keeps 1 - |psi|^2 at the few-ulp level
  CHECK(truncation_deficit(coh) < 1e-12);

  // nested truncations: deficit decreases with cutoff
  double prev = 1.0;
  for (int n : {10, 20, 30}) {
    const FockCutoff c(n);
    TwoModeState sq{Eigen::VectorXcd::Zero(c.dim2()), c};
    sq.amplitudes(0) = 1.0;
    sq.amplitudes = two_mode_squeezer(0.5, 0.0, c) * sq.amplitudes;
    const double deficit = truncation_deficit(sq);
    CHECK(deficit < prev);
    prev = deficit;
  }
}

TEST_CASE("chain round trip at phi = 0 returns the input state") {
  const FockCutoff cutoff(30);
  const CoherentInput in(1.0, 0.7, 0.4);
  TwoModeState final_state{Eigen::VectorXcd(), cutoff};
  simulate_chain_at(0.5, 0.0, in, cutoff, &final_state);
  const TwoModeState input_state = product_coherent_state(in, cutoff);
  const double fidelity =
      std::norm(input_state.amplitudes.dot(final_state.amplitudes)) /
      final_state.amplitudes.squaredNorm();
  CHECK(fidelity >= 1.0 - 1e-8);
}

TEST_CASE("vacuum chain mean matches the chain-coefficient formula") {
  const double r = 0.4, phi = 0.9;
  const MomentReport m =
      simulate_chain(r, phi, CoherentInput::vacuum());
  const double mu = std::cosh(r), nu = std::sinh(r);
  CHECK(rel(m.mean, 8.0 * mu * mu * nu * nu *
                        std::pow(std::sin(phi / 2.0), 2)) < 1e-8);
}

TEST_CASE("oracle and algebra moments agree at the reference point") {
  const CoherentInput in(0.5, 0.5, kPi / 4.0);
  const MomentReport orc = simulate_chain(0.3, 0.7, in);
  const MomentReport alg = moments(0.3, 0.7, in);
  CHECK(rel(orc.mean, alg.mean) < 1e-8);
  CHECK(rel(orc.variance, alg.variance) < 1e-8);
  CHECK(orc.truncation_deficit < 1e-8);
  CHECK(orc.path == ComputationPath::oracle);
}

TEST_CASE("expr_matrix represents the algebra faithfully") {
  const FockCutoff cutoff(10);
  const LadderMatrices lm = ladder_matrices(cutoff);
  const LadderExpr n = LadderExpr::total_number();
  const Eigen::MatrixXcd mat = expr_matrix(n, cutoff);
  const Eigen::MatrixXcd direct =
      lm.a_dagger * lm.a + lm.b_dagger * lm.b;
  CHECK((mat - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cutoff bounds are enforced") {
  CHECK_THROWS_AS(FockCutoff(3), std::invalid_argument);
  CHECK_THROWS_AS(FockCutoff(61), std::invalid_argument);
}
