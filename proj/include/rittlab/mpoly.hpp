#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rittlab/kpoly.hpp"

namespace rittlab {

using Exponent = std::vector<int>;

// Sparse polynomial over K in a fixed ordered list of variables. Terms are
// kept in lexicographic order with the first variable most significant; the
// leading term is the lexicographically largest exponent.
class MPoly {
 public:
  using Terms = std::map<Exponent, FieldElement>;

  MPoly() = default;
  MPoly(FieldPtr field, std::vector<std::string> vars);
  static MPoly constant(FieldPtr field, std::vector<std::string> vars, const FieldElement& c);
  static MPoly variable(FieldPtr field, std::vector<std::string> vars, int i);
  static MPoly monomial(FieldPtr field, std::vector<std::string> vars, Exponent e, const FieldElement& c);
  // Embeds a univariate polynomial as a polynomial in variable `var`.
  static MPoly from_kpoly(FieldPtr field, std::vector<std::string> vars, int var, const KPoly& p);

  const FieldPtr& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElement constant_value() const;  // coefficient of the zero exponent

  int degree(int var) const;
  int min_degree(int var) const;
  int total_degree() const;
  bool involves(int var) const { return degree(var) > 0; }
  std::vector<int> used_vars() const;

  const Exponent& lead_exponent() const { return terms_.rbegin()->first; }
  const FieldElement& lead_coeff() const { return terms_.rbegin()->second; }

  void add_term(const Exponent& e, const FieldElement& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const FieldElement& s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const FieldElement& s) { return a *= s; }
  MPoly operator-() const;
  MPoly pow(int e) const;
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // Multiplies by the monomial with exponent e (entries may be negative as
  // long as the result stays a polynomial).
  MPoly shifted(const Exponent& e) const;
  MPoly derivative(int var) const;
  // Replaces variable `var` by the constant c.
  MPoly substitute(int var, const FieldElement& c) const;
  // Replaces variable `var` by var^t.
  MPoly inflate(int var, int t) const;
  // Coefficients as a polynomial in `var`: result[k] is free of `var`.
  std::vector<MPoly> coeffs_in(int var) const;
  static MPoly from_coeffs(const MPoly& like, int var, const std::vector<MPoly>& c);
  // Univariate view, requires that only `var` occurs.
  KPoly to_kpoly(int var) const;
  // Divides by the lead coefficient.
  MPoly monic() const;

  std::string str() const;

 private:
  FieldPtr field_;
  std::vector<std::string> vars_;
  Terms terms_;
};

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

// Monic gcd (lead coefficient 1); gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);
// gcd of the coefficients of a viewed as a polynomial in `var`.
MPoly content_in(const MPoly& a, int var);

// Factors pairwise coprime and squarefree in `var`, with multiplicities; the
// product of factor^mult equals a up to a scalar.
std::vector<std::pair<MPoly, int>> squarefree_decomposition(const MPoly& a, int var);

enum class FactorMode { UnivariateQ, UnivariateK, MultivariateBaseline };

struct MFactor {
  MPoly poly;  // monic
  int mult = 1;
  bool maybe_reducible = false;
};

struct MFactorization {
  FieldElement scalar;
  std::vector<MFactor> factors;

  MPoly expand(const MPoly& like) const;
  bool complete() const;
};

// Throws UnsupportedShape (with the partial result in the detail) only in
// strict mode when some factor could not be proven irreducible.
MFactorization factor(const MPoly& a, FactorMode mode, bool strict = false);

// Eisenstein test for a in K[X][Y] with Y = variable y_var and X = x_var,
// relative to the irreducible p in K[X].
bool eisenstein_certify(const MPoly& a, int y_var, int x_var, const KPoly& p);

}  // namespace rittlab
