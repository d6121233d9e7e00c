#include <cmath>

#include "doctest.h"

#include "clb/schemes.hpp"

using namespace clb;

namespace {
double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("shot-noise limit") {
  CHECK(coherent_mzi(1e23) == doctest::Approx(1e-23).epsilon(1e-14));
  CHECK(coherent_mzi(1.0) == 1.0);
  // quadrupling the budget halves delta phi
  CHECK(rel(std::sqrt(coherent_mzi(4.0)), 0.5 * std::sqrt(coherent_mzi(1.0))) <
        1e-14);
  CHECK_THROWS_AS(coherent_mzi(0.0), std::invalid_argument);
}

TEST_CASE("squeezed MZI") {
  CHECK(rel(squeezed_mzi(0.0, 7.0), coherent_mzi(7.0)) < 1e-14);
  CHECK(rel(std::sqrt(squeezed_mzi(2.0, 1e13)),
            std::exp(-2.0) / std::sqrt(1e13)) < 1e-12);
}

TEST_CASE("clb scheme delegates to the simple expression") {
  const double r = 1.0, n = 1e13;
  CHECK(rel(clb_scheme(r, n).delta_phi_squared,
            1.0 / (std::pow(std::sinh(2.0), 2) * n)) < 1e-12);
  CHECK(clb_scheme(0.0, n).diverged);
}

TEST_CASE("clb overtakes the squeezed MZI past the crossover gain") {
  // At equal budget the curves cross where sinh^2(2r) = e^{2r}, r ~ 0.7455:
  // below it the squeezed MZI wins, above it clb wins and pulls away
  // exponentially.
  for (double r = 0.5; r < 0.74; r += 0.1) {
    CHECK(clb_scheme(r, 1e13).delta_phi_squared > squeezed_mzi(r, 1e13));
  }
  for (double r = 0.75; r <= 3.0; r += 0.1) {
    CHECK(clb_scheme(r, 1e13).delta_phi_squared < squeezed_mzi(r, 1e13));
  }
  CHECK(clb_scheme(3.0, 1e13).delta_phi_squared * 50.0 <
        squeezed_mzi(3.0, 1e13));
}

TEST_CASE("pump-boosted comparator") {
  CHECK(rel(pump_boosted_coherent(0.0, 1e13, 1e12), 1e-13) < 1e-14);
  CHECK(rel(pump_boosted_coherent(2.0, 1e13, 1e12),
            1.0 / (1e13 + 1e12 * std::pow(std::sinh(2.0), 2))) < 1e-14);
  for (double r = 0.5; r <= 3.0; r += 0.25) {
    CHECK(clb_scheme(r, 1e13).delta_phi_squared <
          pump_boosted_coherent(r, 1e13, 1e12));
  }
}

TEST_CASE("all schemes improve with photon budget") {
  for (double n : {1.0, 1e6}) {
    CHECK(coherent_mzi(2.0 * n) < coherent_mzi(n));
    CHECK(squeezed_mzi(1.0, 2.0 * n) < squeezed_mzi(1.0, n));
    CHECK(clb_scheme(1.0, 2.0 * n).delta_phi_squared <
          clb_scheme(1.0, n).delta_phi_squared);
    CHECK(pump_boosted_coherent(1.0, 2.0 * n, 1e3) <
          pump_boosted_coherent(1.0, n, 1e3));
  }
}

TEST_CASE("clb factorizes into vacuum-limit times shot-noise") {
  for (double r : {0.5, 1.0, 2.0}) {
    for (double n : {1.0, 1e13}) {
      CHECK(rel(clb_scheme(r, n).delta_phi_squared,
                klauder_limit(r).delta_phi_squared / n) < 1e-12);
    }
  }
}

TEST_CASE("ligo report reproduces the r = 3 numbers") {
  const LigoReport rep = ligo_report(3.0, 1e23);
  CHECK(rep.required_n_coh == doctest::Approx(2.5e18).epsilon(0.02));
  CHECK(rep.intensity_reduction_factor == doctest::Approx(4e4).epsilon(0.02));
  CHECK(rep.sensitivity_gain_factor == doctest::Approx(200.0).epsilon(0.02));
  CHECK(rep.vacuum_equivalent_gain == doctest::Approx(13.6).epsilon(0.005));
}

TEST_CASE("ligo report self-consistency") {
  for (double r : {1.0, 3.0}) {
    const LigoReport rep = ligo_report(r, 1e23);
    CHECK(rel(coherent_mzi(1e23),
              clb_scheme(r, rep.required_n_coh).delta_phi_squared) < 1e-10);
  }
  CHECK_THROWS_AS(ligo_report(0.0, 1e23), std::invalid_argument);
  CHECK_THROWS_AS(ligo_report(3.0, -1.0), std::invalid_argument);
}
