#include "clb/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace clb {

namespace {

unsigned g_max_degree = 8;

constexpr double kPruneRel = 1e-14;

// k! * C(n,k) * C(m,k), accumulated as a product of falling factorials over
// k!; exact in double for the small integer ranges the degree cap allows.
double pairing_weight(unsigned n, unsigned m, unsigned k) {
  double w = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    w *= static_cast<double>(n - j) * static_cast<double>(m - j) /
         static_cast<double>(j + 1);
  }
  return w;
}

}  // namespace

unsigned max_total_degree() { return g_max_degree; }
void set_max_total_degree(unsigned degree) { g_max_degree = degree; }

LadderExpr::LadderExpr(TermMap terms) : terms_(std::move(terms)) { prune(); }

LadderExpr LadderExpr::monomial(LadderMonomial m, Complex coeff) {
  TermMap t;
  if (coeff != Complex(0.0)) t.emplace(m, coeff);
  return LadderExpr(std::move(t));
}

LadderExpr LadderExpr::constant(Complex c) { return monomial({0, 0, 0, 0}, c); }
LadderExpr LadderExpr::a() { return monomial({0, 1, 0, 0}); }
LadderExpr LadderExpr::a_dag() { return monomial({1, 0, 0, 0}); }
LadderExpr LadderExpr::b() { return monomial({0, 0, 0, 1}); }
LadderExpr LadderExpr::b_dag() { return monomial({0, 0, 1, 0}); }

LadderExpr LadderExpr::total_number() {
  TermMap t;
  t.emplace(LadderMonomial{1, 1, 0, 0}, Complex(1.0));
  t.emplace(LadderMonomial{0, 0, 1, 1}, Complex(1.0));
  return LadderExpr(std::move(t));
}

unsigned LadderExpr::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Complex LadderExpr::coefficient(const LadderMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

LadderExpr LadderExpr::operator+(const LadderExpr& rhs) const {
  TermMap out = terms_;
  for (const auto& [m, c] : rhs.terms_) out[m] += c;
  return LadderExpr(std::move(out));
}

LadderExpr LadderExpr::operator-(const LadderExpr& rhs) const {
  TermMap out = terms_;
  for (const auto& [m, c] : rhs.terms_) out[m] -= c;
  return LadderExpr(std::move(out));
}

LadderExpr LadderExpr::operator*(Complex scale) const {
  TermMap out;
  for (const auto& [m, c] : terms_) out.emplace(m, c * scale);
  return LadderExpr(std::move(out));
}

void LadderExpr::prune() {
  double largest = 0.0;
  for (const auto& [m, c] : terms_) largest = std::max(largest, std::abs(c));
  const double cut = kPruneRel * largest;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= cut) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::string LadderExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)"
       << "*ad^" << m.p << " a^" << m.q << " bd^" << m.s << " b^" << m.t;
  }
  return os.str();
}

LadderExpr multiply(const LadderExpr& x, const LadderExpr& y) {
  LadderExpr::TermMap out;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      if (mx.degree() + my.degree() > max_total_degree()) {
        throw std::domain_error(
            "multiply: product exceeds the configured maximum total degree (" +
            std::to_string(max_total_degree()) + ")");
      }
      const Complex c = cx * cy;
      // Reorder the inner a^q1 ad^p2 and b^t1 bd^s2 blocks.
      for (unsigned k = 0; k <= std::min(mx.q, my.p); ++k) {
        const double wa = pairing_weight(mx.q, my.p, k);
        for (unsigned l = 0; l <= std::min(mx.t, my.s); ++l) {
          const double wb = pairing_weight(mx.t, my.s, l);
          LadderMonomial m{mx.p + my.p - k, mx.q + my.q - k,
                           mx.s + my.s - l, mx.t + my.t - l};
          out[m] += c * wa * wb;
        }
      }
    }
  }
  return LadderExpr(std::move(out));
}

LadderExpr adjoint(const LadderExpr& x) {
  // (ad^p a^q bd^s b^t)^dag = ad^q a^p bd^t b^s, already normal ordered.
  LadderExpr::TermMap out;
  for (const auto& [m, c] : x.terms()) {
    out.emplace(LadderMonomial{m.q, m.p, m.t, m.s}, std::conj(c));
  }
  return LadderExpr(std::move(out));
}

}  // namespace clb
