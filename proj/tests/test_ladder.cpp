#include <stdexcept>

#include "doctest.h"

#include "clb/ladder.hpp"

using namespace clb;

namespace {

bool approx_equal(const LadderExpr& x, const LadderExpr& y, double tol = 1e-12) {
  LadderExpr diff = x - y;
  for (const auto& [m, c] : diff.terms()) {
    double scale = std::max({std::abs(x.coefficient(m)),
                             std::abs(y.coefficient(m)), 1.0});
    if (std::abs(c) > tol * scale) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("a times a_dag picks up the commutator") {
  const LadderExpr prod = multiply(LadderExpr::a(), LadderExpr::a_dag());
  CHECK(prod.size() == 2);
  CHECK(prod.coefficient({0, 0, 0, 0}) == Complex(1.0));
  CHECK(prod.coefficient({1, 1, 0, 0}) == Complex(1.0));
}

TEST_CASE("number operator squared") {
  const LadderExpr n = multiply(LadderExpr::a_dag(), LadderExpr::a());
  const LadderExpr n2 = multiply(n, n);
  // (ad a)^2 = ad^2 a^2 + ad a
  CHECK(n2.size() == 2);
  CHECK(n2.coefficient({2, 2, 0, 0}) == Complex(1.0));
  CHECK(n2.coefficient({1, 1, 0, 0}) == Complex(1.0));
}

TEST_CASE("cross-mode operators commute") {
  const LadderExpr xy = multiply(LadderExpr::a(), LadderExpr::b_dag());
  const LadderExpr yx = multiply(LadderExpr::b_dag(), LadderExpr::a());
  CHECK(xy == yx);
  CHECK(xy.coefficient({0, 1, 1, 0}) == Complex(1.0));
}

TEST_CASE("zero polynomial is the empty association") {
  const LadderExpr z = LadderExpr::a() - LadderExpr::a();
  CHECK(z.empty());
  CHECK(z.str() == "0");
}

TEST_CASE("near-zero dust terms are pruned") {
  LadderExpr x = LadderExpr::a() * Complex(1.0) +
                 LadderExpr::b() * Complex(1e-20);
  CHECK(x.size() == 1);
}

TEST_CASE("adjoint of a is a_dag") {
  CHECK(adjoint(LadderExpr::a()) == LadderExpr::a_dag());
}

TEST_CASE("adjoint of 2i ad b is -2i bd a in canonical order") {
  const LadderExpr x =
      multiply(LadderExpr::a_dag(), LadderExpr::b()) * Complex(0.0, 2.0);
  const LadderExpr expected =
      multiply(LadderExpr::b_dag(), LadderExpr::a()) * Complex(0.0, -2.0);
  CHECK(adjoint(x) == expected);
  CHECK(adjoint(x).coefficient({0, 1, 1, 0}) == Complex(0.0, -2.0));
}

TEST_CASE("total number operator is Hermitian") {
  const LadderExpr n = LadderExpr::total_number();
  CHECK(adjoint(n) == n);
}

TEST_CASE("adjoint is an involution") {
  const LadderExpr x = multiply(LadderExpr::a_dag(), LadderExpr::b()) *
                           Complex(1.5, -0.5) +
                       LadderExpr::constant(Complex(0.0, 2.0));
  CHECK(adjoint(adjoint(x)) == x);
}

TEST_CASE("multiply is bilinear") {
  const LadderExpr x = LadderExpr::a_dag();
  const LadderExpr y = LadderExpr::a();
  const LadderExpr z = LadderExpr::b();
  const LadderExpr lhs = multiply(x, y + z * Complex(2.0));
  const LadderExpr rhs = multiply(x, y) + multiply(x, z) * Complex(2.0);
  CHECK(approx_equal(lhs, rhs));
}

TEST_CASE("degree cap rejects oversized products") {
  const unsigned saved = max_total_degree();
  set_max_total_degree(3);
  const LadderExpr n = multiply(LadderExpr::a_dag(), LadderExpr::a());
  CHECK_THROWS_AS(multiply(n, n), std::domain_error);
  set_max_total_degree(saved);
}

TEST_CASE("rendering is deterministic and sorted") {
  const LadderExpr x = LadderExpr::b() + LadderExpr::a_dag();
  CHECK(x.str() ==
        "(1+0i)*ad^0 a^0 bd^0 b^1 + (1+0i)*ad^1 a^0 bd^0 b^0");
}
