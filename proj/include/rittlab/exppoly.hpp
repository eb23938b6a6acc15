#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rittlab/ball.hpp"
#include "rittlab/kpoly.hpp"

namespace rittlab {

// lambda * exp(alpha * x).
struct UnitE {
  FieldElement lambda;
  FieldElement alpha;
};

// Finite sum of P_beta(x) * exp(beta * x) with P_beta in K[x]. The zero
// function is the empty map.
class ExpPoly {
 public:
  using Terms = std::map<FieldElement, KPoly>;

  ExpPoly() = default;
  explicit ExpPoly(FieldPtr field) : field_(std::move(field)) {}
  // Merges repeated exponents and drops zero coefficients.
  static ExpPoly build(FieldPtr field, const std::vector<std::pair<FieldElement, KPoly>>& terms);
  static ExpPoly constant(const FieldElement& c);
  static ExpPoly x(FieldPtr field);
  // c * exp(beta * x)
  static ExpPoly exp(const FieldElement& beta, const FieldElement& c);
  static ExpPoly from_unit(FieldPtr field, const UnitE& u);
  // P(exp(beta * x)) scaled by a unit.
  static ExpPoly from_poly_in_exp(const UnitE& u, const FieldElement& beta, const KPoly& p);

  const FieldPtr& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::vector<FieldElement> exponents() const;
  KPoly coeff(const FieldElement& beta) const;

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(const ExpPoly& o);
  ExpPoly& operator*=(const FieldElement& s);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(ExpPoly a, const FieldElement& s) { return a *= s; }
  ExpPoly operator-() const;
  ExpPoly pow(int e) const;
  bool operator==(const ExpPoly& o) const;
  bool operator!=(const ExpPoly& o) const { return !(*this == o); }

  // (beta, P) -> (beta, P' + beta P).
  ExpPoly derive() const;
  ExpPoly times_unit(const UnitE& u) const;
  // f(x / n) for a nonzero integer n is not closed over K[x]; this scales
  // the variable by a rational s: f(s x).
  ExpPoly rescaled(const Rational& s) const;

  // Expression text accepted by the parser.
  std::string str() const;

 private:
  void add_term(const FieldElement& beta, const KPoly& p);
  FieldPtr field_;
  Terms terms_;
};

UnitE unit_inverse(const UnitE& u);
UnitE unit_mul(const UnitE& a, const UnitE& b);
bool unit_is_one(const UnitE& u);
// The unit u with f = u g, if f and g differ by a unit.
std::optional<UnitE> unit_quotient(const ExpPoly& f, const ExpPoly& g);
std::string unit_str(const UnitE& u);

// x^{-omega} * lambda exp(alpha x) * P(exp(beta x)) with omega = ord_1 P and
// P(0) != 0; holomorphic and nonzero at the origin.
struct SimpleEForm {
  int omega = 0;
  UnitE unit;
  FieldElement beta;
  KPoly P;

  // The exponential polynomial lambda exp(alpha x) P(exp(beta x)), i.e. the
  // form multiplied by x^omega.
  ExpPoly numerator() const;
  std::string str() const;
};

// Multiplicity of 1 as a root of p.
int ord1(const KPoly& p);
SimpleEForm make_simple(const UnitE& unit, const FieldElement& beta, const KPoly& p);

// Plain Taylor coefficients a_0..a_n at the origin.
std::vector<FieldElement> ep_taylor(const ExpPoly& f, int n);

// Order of vanishing at 0, bounded by sum(deg P + 1) - 1 for f != 0.
int order_at_zero(const ExpPoly& f);

// Returns u and g = u f with Taylor expansion x^p (1 + 0 x + ...).
std::pair<UnitE, ExpPoly> ep_normalize(const ExpPoly& f);
bool is_normalized(const ExpPoly& f);

enum class EClass { Zero, Unit, Simple, General };
struct Classification {
  EClass kind = EClass::Zero;
  std::optional<UnitE> unit;
  std::optional<SimpleEForm> simple;
};
Classification ep_classify(const ExpPoly& f);

// Canonical generator of the rational line through the given nonzero
// exponent differences: every difference is an integer multiple, the
// multiples have gcd 1, and the first nonzero rational coordinate is positive.
// Returns nullopt when the differences are not on one rational line.
std::optional<FieldElement> canonical_support(const std::vector<FieldElement>& diffs);

// Certified enclosure of f(z).
CBall ep_eval(const ExpPoly& f, const CBall& z, long precision);

// Exact order of vanishing at an algebraic point of K.
int vanishing_order_algebraic(const ExpPoly& f, const FieldElement& x0);

}  // namespace rittlab
