#pragma once

#include <complex>
#include <map>
#include <string>

namespace clb {

using Complex = std::complex<double>;

/// Normal-ordered monomial in the ladder operators of two bosonic modes,
/// ad^p a^q bd^s b^t (all creation operators left of annihilation, per mode).
struct LadderMonomial {
  unsigned p = 0;  // power of a-dagger
  unsigned q = 0;  // power of a
  unsigned s = 0;  // power of b-dagger
  unsigned t = 0;  // power of b

  unsigned degree() const { return p + q + s + t; }

  friend auto operator<=>(const LadderMonomial&, const LadderMonomial&) = default;
};

/// Polynomial in the two-mode ladder operators, kept in canonical form:
/// unique normal-ordered monomial keys, no stored zero coefficients.
/// Immutable in spirit; all operations return fresh values.
class LadderExpr {
 public:
  using TermMap = std::map<LadderMonomial, Complex>;

  LadderExpr() = default;
  explicit LadderExpr(TermMap terms);

  static LadderExpr monomial(LadderMonomial m, Complex coeff = 1.0);
  static LadderExpr constant(Complex c);

  // Single-operator building blocks.
  static LadderExpr a();
  static LadderExpr a_dag();
  static LadderExpr b();
  static LadderExpr b_dag();

  /// ad a + bd b, the total intensity observable.
  static LadderExpr total_number();

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned degree() const;

  Complex coefficient(const LadderMonomial& m) const;

  LadderExpr operator+(const LadderExpr& rhs) const;
  LadderExpr operator-(const LadderExpr& rhs) const;
  LadderExpr operator*(Complex scale) const;

  bool operator==(const LadderExpr& rhs) const { return terms_ == rhs.terms_; }

  /// Deterministic rendering, terms sorted by (p,q,s,t).
  std::string str() const;

 private:
  void prune();

  TermMap terms_;
};

/// Maximum total degree any operation may produce. Exceeding it throws
/// std::domain_error, which signals misuse rather than a recoverable state.
unsigned max_total_degree();
void set_max_total_degree(unsigned degree);

/// Canonical normal-ordered product, applying [a, ad] = 1, [b, bd] = 1 and
/// cross-mode commutativity via the closed-form reordering
///   a^q ad^p = sum_k k! C(q,k) C(p,k) ad^(p-k) a^(q-k).
LadderExpr multiply(const LadderExpr& x, const LadderExpr& y);

/// Hermitian adjoint: conjugate coefficients, swap p<->q and s<->t.
LadderExpr adjoint(const LadderExpr& x);

}  // namespace clb
