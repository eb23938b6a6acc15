#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rittlab/ball.hpp"
#include "rittlab/qpoly.hpp"

namespace rittlab {

class FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

// A number field K = Q(t) with t a root of an irreducible monic rational
// polynomial, together with a distinguished complex embedding given by a
// rational rectangle isolating one root.
class FieldDesc : public std::enable_shared_from_this<FieldDesc> {
 public:
  // Validates irreducibility and that the box isolates exactly one root.
  // Throws ReduciblePolynomial, BoxContainsNoRoot, BoxContainsMultipleRoots.
  static FieldPtr create(const QPoly& minpoly, const QBox& box, std::string generator = "t");
  // The box is grown or shrunk around `near` until it holds one root.
  static FieldPtr create_near(const QPoly& minpoly, const Rational& near_re, const Rational& near_im,
                              std::string generator = "t");
  static FieldPtr rationals();
  static FieldPtr gaussian();  // Q(i), t -> i

  const QPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  const QBox& isolating_box() const { return box_; }
  const std::string& generator() const { return generator_; }

  // An isolating box for the distinguished root with both sides <= width.
  // Refinements are cached; safe to call concurrently.
  QBox refined_box(const Rational& width) const;

  // t^k reduced modulo the minimal polynomial, for d <= k <= 2d-2.
  const std::vector<std::vector<Rational>>& reduction_table() const { return reduce_; }

  std::string declaration() const;

 private:
  FieldDesc(QPoly minpoly, QBox box, std::string generator);

  QPoly minpoly_;
  QBox box_;
  std::string generator_;
  std::vector<std::vector<Rational>> reduce_;
  mutable std::mutex refine_mutex_;
  mutable QBox finest_;
};

// Element of K in power-basis coordinates. A default-constructed element is
// a field-less zero that adopts the field of whatever it is combined with.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(FieldPtr field);
  FieldElement(FieldPtr field, const Rational& value);
  FieldElement(FieldPtr field, std::vector<Rational> coords);
  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  // Coordinates with respect to 1, t, ..., t^{d-1}; empty means zero.
  const std::vector<Rational>& coords() const { return c_; }
  Rational coord(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(long e) const;
  FieldElement scaled(const Rational& s) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  // Total order on coordinates, used for map keys.
  bool operator<(const FieldElement& o) const;

  QPoly as_poly() const;
  std::string str() const;

 private:
  void normalize();
  friend FieldPtr common_field(const FieldElement& a, const FieldElement& b);

  FieldPtr field_;
  std::vector<Rational> c_;
};

FieldPtr common_field(const FieldElement& a, const FieldElement& b);

// Certified enclosure of the image of a under the distinguished embedding with
// radius <= 2^-precision (precision capped at 1000 bits). Zero maps to the
// exact zero ball.
CBall embed_numeric(const FieldElement& a, long precision);

// r in Q with b1 = r * b2, if it exists.
std::optional<Rational> rational_ratio(const FieldElement& b1, const FieldElement& b2);

// Parses `field Q(t) where t^2+1 = 0 near 0+1i`.
FieldPtr parse_field_declaration(const std::string& text);

// Exact rational from a decimal or fraction literal such as "-0.75" or "3/4".
Rational parse_rational_literal(const std::string& text);

}  // namespace rittlab
