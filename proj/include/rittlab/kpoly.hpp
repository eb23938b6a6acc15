#pragma once

#include <utility>
#include <vector>

#include "rittlab/numberfield.hpp"

namespace rittlab {

// Dense univariate polynomial over a number field, coefficients low to high.
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(FieldPtr field) : field_(std::move(field)) {}
  KPoly(FieldPtr field, std::vector<FieldElement> coeffs);
  static KPoly constant(const FieldElement& c);
  static KPoly monomial(const FieldElement& c, std::size_t k);
  static KPoly x(FieldPtr field);
  static KPoly from_q(FieldPtr field, const QPoly& p);

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  FieldElement operator[](std::size_t i) const { return i < c_.size() ? c_[i] : FieldElement(field_); }
  const FieldElement& lc() const { return c_.back(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  // True when every coefficient lies in Q.
  bool is_rational() const;
  QPoly to_q() const;  // requires is_rational()

  FieldElement operator()(const FieldElement& t) const;

  KPoly& operator+=(const KPoly& o);
  KPoly& operator-=(const KPoly& o);
  KPoly& operator*=(const KPoly& o);
  KPoly& operator*=(const FieldElement& s);
  friend KPoly operator+(KPoly a, const KPoly& b) { return a += b; }
  friend KPoly operator-(KPoly a, const KPoly& b) { return a -= b; }
  friend KPoly operator*(KPoly a, const KPoly& b) { return a *= b; }
  friend KPoly operator*(KPoly a, const FieldElement& s) { return a *= s; }
  KPoly operator-() const;
  bool operator==(const KPoly& o) const;
  bool operator!=(const KPoly& o) const { return !(*this == o); }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  FieldPtr field_;
  std::vector<FieldElement> c_;
};

std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b);
KPoly rem(const KPoly& a, const KPoly& b);
KPoly monic(const KPoly& a);
KPoly derivative(const KPoly& a);
KPoly gcd(const KPoly& a, const KPoly& b);
// a(x + s) for s in K.
KPoly shift(const KPoly& a, const FieldElement& s);
// Monic squarefree factors with multiplicities (Yun).
std::vector<std::pair<KPoly, int>> squarefree_k(const KPoly& a);

// Norm of the element, the determinant of multiplication by a.
Rational norm(const FieldElement& a);
// Norm of a polynomial, the product of its conjugates over Q.
QPoly norm(const KPoly& a);

struct KFactorization {
  FieldElement scalar;
  std::vector<std::pair<KPoly, int>> factors;
};

// Complete factorization over K by the norm method: shift until the norm is
// squarefree, factor the norm over Q, recover factors by gcds over K.
KFactorization factor_over_k(const KPoly& a);

}  // namespace rittlab
