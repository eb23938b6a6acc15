#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rittlab {

using Rational = mpq_class;
using Integer = mpz_class;

// Dense univariate polynomial over Q, coefficients stored low to high.
// The zero polynomial has no stored coefficients and degree -1.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  QPoly(std::initializer_list<Rational> coeffs);

  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, std::size_t k);
  static QPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lc() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& t) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const Rational& s);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend QPoly operator*(QPoly a, const Rational& s) { return a *= s; }
  friend QPoly operator*(const Rational& s, QPoly a) { return a *= s; }
  QPoly operator-() const;

  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly rem(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& a);
QPoly derivative(const QPoly& a);
// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
// a(b(x)).
QPoly compose(const QPoly& a, const QPoly& b);
// Monic squarefree factors with multiplicities (Yun).
std::vector<std::pair<QPoly, int>> squarefree_q(const QPoly& a);
QPoly squarefree_part(const QPoly& a);

// Interpolating polynomial through (xs[i], ys[i]); xs pairwise distinct.
QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

// Real roots of p inside the closed interval [lo, hi]. Interior roots are
// reported as open isolating intervals (a_i, b_i) sorted increasingly with
// lo < a_1, b_i <= a_{i+1}, b_last < hi; no interval endpoint is a root.
struct RealRootIsolation {
  bool root_at_lo = false;
  bool root_at_hi = false;
  std::vector<std::pair<Rational, Rational>> interior;

  std::size_t count() const { return interior.size() + root_at_lo + root_at_hi; }
};
RealRootIsolation isolate_real_roots(const QPoly& p, const Rational& lo, const Rational& hi);

// Rectangle [re_lo, re_hi] x [im_lo, im_hi] with rational corners.
struct QBox {
  Rational re_lo, re_hi, im_lo, im_hi;
};

// Exact number of complex roots (with multiplicity) of p in the open box, by
// the argument principle evaluated with Sturm sequences along each edge.
// Returns nullopt when p has a root on the boundary.
std::optional<int> count_roots_in_box(const QPoly& p, const QBox& box);

// Integer helpers shared by the factorization code.
Integer content(const std::vector<Integer>& c);
// Primitive integer polynomial proportional to a (positive leading coefficient).
std::vector<Integer> primitive_integer(const QPoly& a);
QPoly from_integer(const std::vector<Integer>& c);

}  // namespace rittlab
