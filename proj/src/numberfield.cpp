#include "rittlab/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "rittlab/error.hpp"
#include "rittlab/factor_q.hpp"

namespace rittlab {

namespace {

struct GaussQ {
  Rational re, im;
};

GaussQ gmul(const GaussQ& a, const GaussQ& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussQ gdiv(const GaussQ& a, const GaussQ& b) {
  Rational n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

GaussQ horner(const QPoly& p, const GaussQ& z) {
  GaussQ acc{0, 0};
  for (int i = p.degree(); i >= 0; --i) {
    acc = gmul(acc, z);
    acc.re += p[i];
  }
  return acc;
}

// Nearest dyadic rational with `bits` fractional bits.
Rational round_dyadic(const Rational& q, long bits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Integer num = q.get_num() * scale * 2 + q.get_den();
  Integer den = q.get_den() * 2;
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Rational out(r, scale);
  out.canonicalize();
  return out;
}

Rational side(const QBox& b) { return std::max(b.re_hi - b.re_lo, b.im_hi - b.im_lo); }

bool inside(const QBox& inner, const QBox& outer) {
  return inner.re_lo >= outer.re_lo && inner.re_hi <= outer.re_hi && inner.im_lo >= outer.im_lo &&
         inner.im_hi <= outer.im_hi;
}

long bits_for(const Rational& width) {
  // Smallest b with 2^-b <= width.
  long b = 0;
  Rational w = 1;
  while (w > width) {
    w /= 2;
    ++b;
  }
  return b;
}

// One quadrisection step keeping the sub-box that holds the root.
QBox bisect_once(const QPoly& p, const QBox& b) {
  for (int j = 0; j < 32; ++j) {
    Rational shift(j, 97);
    Rational mr = b.re_lo + (b.re_hi - b.re_lo) * (Rational(1, 2) + shift);
    Rational mi = b.im_lo + (b.im_hi - b.im_lo) * (Rational(1, 2) - shift);
    QBox q[4] = {{b.re_lo, mr, b.im_lo, mi}, {mr, b.re_hi, b.im_lo, mi},
                 {b.re_lo, mr, mi, b.im_hi}, {mr, b.re_hi, mi, b.im_hi}};
    bool clean = true;
    for (const QBox& s : q) {
      auto c = count_roots_in_box(p, s);
      if (!c) {
        clean = false;
        break;
      }
      if (*c == 1) return s;
    }
    if (!clean) continue;
  }
  throw Error(ErrorKind::CertificationFailed, "root box bisection lost the root");
}

// Newton iteration in exact Gaussian rationals rounded to dyadics, followed
// by an exact root count on a small box around the result.
std::optional<QBox> newton_box(const QPoly& p, const QBox& b, const Rational& width) {
  QPoly dp = derivative(p);
  long bits = bits_for(width) + 8;
  GaussQ z{(b.re_lo + b.re_hi) / 2, (b.im_lo + b.im_hi) / 2};
  Rational target = width / 16;
  target *= target;
  for (int it = 0; it < 64; ++it) {
    GaussQ d = horner(dp, z);
    if (sgn(d.re) == 0 && sgn(d.im) == 0) return std::nullopt;
    GaussQ step = gdiv(horner(p, z), d);
    z.re = round_dyadic(z.re - step.re, bits);
    z.im = round_dyadic(z.im - step.im, bits);
    if (step.re * step.re + step.im * step.im < target) break;
  }
  Rational h = width / 4;
  QBox c{z.re - h, z.re + h, z.im - h, z.im + h};
  if (!inside(c, b)) return std::nullopt;
  auto n = count_roots_in_box(p, c);
  if (n && *n == 1) return c;
  return std::nullopt;
}

QBox refine(const QPoly& p, QBox b, const Rational& width) {
  bool newton_tried = false;
  while (side(b) > width) {
    if (side(b) < Rational(1, 64) && !newton_tried) {
      newton_tried = true;
      if (auto c = newton_box(p, b, width)) return *c;
    }
    b = bisect_once(p, b);
  }
  return b;
}

std::vector<Rational> trimmed(std::vector<Rational> c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  return c;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  const QBox& x = a->isolating_box();
  const QBox& y = b->isolating_box();
  return a->minpoly() == b->minpoly() && x.re_lo == y.re_lo && x.re_hi == y.re_hi &&
         x.im_lo == y.im_lo && x.im_hi == y.im_hi;
}

// Extended Euclid: returns u with u*a = 1 mod m, given gcd(a, m) = 1.
QPoly inverse_mod(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = a, s0, s1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw Error(ErrorKind::DivisionByZero, "element is not invertible");
  return s0 * Rational(1 / r0.lc());
}

}  // namespace

FieldDesc::FieldDesc(QPoly minpoly, QBox box, std::string generator)
    : minpoly_(std::move(minpoly)), box_(box), generator_(std::move(generator)), finest_(box) {
  int d = degree();
  for (int k = d; k <= 2 * d - 2; ++k) {
    QPoly r = rem(QPoly::monomial(1, k), minpoly_);
    std::vector<Rational> v(d);
    for (int i = 0; i < d; ++i) v[i] = r[i];
    reduce_.push_back(std::move(v));
  }
}

FieldPtr FieldDesc::create(const QPoly& minpoly, const QBox& box, std::string generator) {
  if (minpoly.degree() < 1 || minpoly.lc() != 1)
    throw Error(ErrorKind::InvalidArgument, "minimal polynomial must be monic of degree >= 1");
  if (box.re_lo > box.re_hi || box.im_lo > box.im_hi)
    throw Error(ErrorKind::InvalidArgument, "empty isolating box");
  if (!is_irreducible_over_q(minpoly))
    throw Error(ErrorKind::ReduciblePolynomial, minpoly.str(generator));
  QBox b = box;
  if (minpoly.degree() == 1) {
    Rational r = -minpoly[0];
    if (r < b.re_lo || r > b.re_hi || sgn(b.im_lo) > 0 || sgn(b.im_hi) < 0)
      throw Error(ErrorKind::BoxContainsNoRoot, minpoly.str(generator));
    b = QBox{r, r, 0, 0};
  } else {
    std::optional<int> n = count_roots_in_box(minpoly, b);
    for (int k = 1; !n && k <= 16; ++k) {
      // A root on the boundary: nudge the box outwards and recount.
      Rational e = std::max(side(b), Rational(1)) / Rational(1000 * k + 7);
      b = QBox{b.re_lo - e, b.re_hi + e, b.im_lo - e, b.im_hi + e};
      n = count_roots_in_box(minpoly, b);
    }
    if (!n || *n > 1) throw Error(ErrorKind::BoxContainsMultipleRoots, minpoly.str(generator));
    if (*n == 0) throw Error(ErrorKind::BoxContainsNoRoot, minpoly.str(generator));
  }
  return FieldPtr(new FieldDesc(minpoly, b, std::move(generator)));
}

FieldPtr FieldDesc::create_near(const QPoly& minpoly, const Rational& near_re, const Rational& near_im,
                                std::string generator) {
  if (minpoly.degree() == 1) {
    Rational r = -minpoly[0] / minpoly.lc();
    return create(minpoly, QBox{r, r, 0, 0}, std::move(generator));
  }
  Rational h(1, 2), too_small = 0, too_big = 0;
  for (int it = 0; it < 400; ++it) {
    QBox b{near_re - h, near_re + h, near_im - h, near_im + h};
    std::optional<int> n = count_roots_in_box(minpoly, b);
    if (n && *n == 1) return create(minpoly, b, std::move(generator));
    if (!n) {
      h = h * 31 / 32;
      continue;
    }
    if (*n == 0) too_small = h;
    else too_big = h;
    if (sgn(too_big) == 0) h *= 2;
    else h = (too_small + too_big) / 2;
  }
  throw Error(ErrorKind::BoxContainsMultipleRoots, "no box around the given point isolates one root");
}

FieldPtr FieldDesc::rationals() {
  static FieldPtr q = create(QPoly{0, 1}, QBox{0, 0, 0, 0}, "t");
  return q;
}

FieldPtr FieldDesc::gaussian() {
  static FieldPtr g = create(QPoly{1, 0, 1}, QBox{Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}, "t");
  return g;
}

QBox FieldDesc::refined_box(const Rational& width) const {
  std::lock_guard<std::mutex> lock(refine_mutex_);
  if (degree() == 1 || side(finest_) <= width) return finest_;
  finest_ = refine(minpoly_, finest_, width);
  return finest_;
}

std::string FieldDesc::declaration() const {
  QBox b = refined_box(Rational(1, 1 << 20));
  Rational re = (b.re_lo + b.re_hi) / 2, im = (b.im_lo + b.im_hi) / 2;
  std::ostringstream os;
  os << "field Q(" << generator_ << ") where " << minpoly_.str(generator_) << " = 0 near " << re.get_str()
     << (sgn(im) < 0 ? "-" : "+") << Rational(abs(im)).get_str() << "i";
  return os.str();
}

FieldElement::FieldElement(FieldPtr field) : field_(std::move(field)) {}

FieldElement::FieldElement(FieldPtr field, const Rational& value) : field_(std::move(field)) {
  if (sgn(value) != 0) {
    c_.push_back(value);
    c_[0].canonicalize();
  }
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), c_(std::move(coords)) {
  normalize();
}

FieldElement FieldElement::generator(FieldPtr field) {
  return FieldElement(field, field->minpoly().degree() == 1 ? std::vector<Rational>{-field->minpoly()[0]}
                                                            : std::vector<Rational>{0, 1});
}

void FieldElement::normalize() {
  for (auto& v : c_) v.canonicalize();
  if (field_ && static_cast<int>(c_.size()) > field_->degree()) {
    QPoly r = rem(QPoly(c_), field_->minpoly());
    c_ = r.coeffs();
  }
  c_ = trimmed(std::move(c_));
}

bool FieldElement::is_zero() const { return c_.empty(); }
bool FieldElement::is_one() const { return c_.size() == 1 && c_[0] == 1; }
bool FieldElement::is_rational() const { return c_.size() <= 1; }

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::InvalidArgument, "element is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

FieldPtr common_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field_) return b.field_;
  if (!b.field_) return a.field_;
  if (!same_field(a.field_, b.field_)) throw Error(ErrorKind::MixedFields, "operands live in different fields");
  return a.field_;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  field_ = common_field(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  c_ = trimmed(std::move(c_));
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  field_ = common_field(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  c_ = trimmed(std::move(c_));
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  field_ = common_field(*this, o);
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  if (o.c_.size() == 1) {
    for (auto& v : c_) v *= o.c_[0];
    return *this;
  }
  if (c_.size() == 1) {
    Rational s = c_[0];
    c_ = o.c_;
    for (auto& v : c_) v *= s;
    return *this;
  }
  int d = field_->degree();
  std::vector<Rational> prod(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
  std::vector<Rational> out(std::min<std::size_t>(prod.size(), d));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = prod[i];
  const auto& table = field_->reduction_table();
  for (std::size_t k = d; k < prod.size(); ++k) {
    if (sgn(prod[k]) == 0) continue;
    out.resize(d);
    for (int i = 0; i < d; ++i) out[i] += prod[k] * table[k - d][i];
  }
  c_ = trimmed(std::move(out));
  return *this;
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (c_.size() == 1) return FieldElement(field_, Rational(1 / c_[0]));
  QPoly u = inverse_mod(as_poly(), field_->minpoly());
  return FieldElement(field_, u.coeffs());
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  field_ = common_field(*this, o);
  return *this *= o.inv();
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  FieldElement r(field_, Rational(1)), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

FieldElement FieldElement::scaled(const Rational& s) const {
  if (sgn(s) == 0) return FieldElement(field_);
  FieldElement r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (field_ && o.field_ && !same_field(field_, o.field_)) return false;
  return c_ == o.c_;
}

bool FieldElement::operator<(const FieldElement& o) const {
  std::size_t n = std::max(c_.size(), o.c_.size());
  for (std::size_t i = 0; i < n; ++i) {
    Rational a = coord(i), b = o.coord(i);
    if (a != b) return a < b;
  }
  return false;
}

QPoly FieldElement::as_poly() const { return QPoly(c_); }

std::string FieldElement::str() const {
  return as_poly().str(field_ ? field_->generator() : std::string("t"));
}

CBall embed_numeric(const FieldElement& a, long precision) {
  mpfr_prec_t prec = precision + 32;
  if (a.is_zero()) return CBall(prec);
  auto mag_bits = [](const Rational& q) {
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) + 2;
  };
  long extra = 0;
  for (const auto& c : a.coords()) extra = std::max(extra, mag_bits(c));
  prec += extra;
  if (a.is_rational() || a.field()->degree() == 1) {
    Rational v = a.is_rational() ? a.rational_value() : a.coord(0) + a.coord(1) * -a.field()->minpoly()[0];
    return CBall(v, Rational(0), prec + mag_bits(v));
  }
  const FieldDesc& f = *a.field();
  long want = precision + 8 + extra;
  double limit = std::ldexp(1.0, -static_cast<int>(std::min<long>(precision, 1000)));
  for (int round = 0; round < 64; ++round) {
    Rational w(1);
    mpz_mul_2exp(w.get_den_mpz_t(), w.get_den_mpz_t(), static_cast<mp_bitcnt_t>(want));
    QBox b = f.refined_box(w);
    CBall theta(Rational((b.re_lo + b.re_hi) / 2), Rational((b.im_lo + b.im_hi) / 2), prec);
    Rational hw = side(b) / 2;
    theta.inflate(up(2.0 * hw.get_d()));
    const auto& c = a.coords();
    CBall acc(c.back(), Rational(0), prec);
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) acc = acc * theta + CBall(c[i], Rational(0), prec);
    if (acc.rad() <= limit) return acc;
    long deficit = static_cast<long>(std::ceil(std::log2(acc.rad() / limit))) + 4;
    want += deficit;
    prec += deficit;
  }
  throw Error(ErrorKind::CertificationFailed, "embedding did not reach the requested precision");
}

std::optional<Rational> rational_ratio(const FieldElement& b1, const FieldElement& b2) {
  common_field(b1, b2);
  if (b2.is_zero()) throw Error(ErrorKind::DivisionByZero, "ratio by zero");
  std::size_t k = 0;
  while (sgn(b2.coord(k)) == 0) ++k;
  Rational r = b1.coord(k) / b2.coord(k);
  std::size_t n = std::max(b1.coords().size(), b2.coords().size());
  for (std::size_t i = 0; i < n; ++i)
    if (b1.coord(i) != r * b2.coord(i)) return std::nullopt;
  return r;
}

Rational parse_rational_literal(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty number");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  Rational v;
  auto digits = [&](const std::string& d) {
    if (d.empty() || !std::all_of(d.begin(), d.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorKind::SyntaxError, "bad number '" + text + "'");
    return Integer(d);
  };
  if (auto slash = body.find('/'); slash != std::string::npos) {
    Integer den = digits(body.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
    v = Rational(digits(body.substr(0, slash)), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    v = Rational(digits(ip) * scale + (fp.empty() ? Integer(0) : digits(fp)), scale);
  } else {
    v = Rational(digits(body));
  }
  v.canonicalize();
  return neg ? Rational(-v) : v;
}

namespace {

// Recursive descent for polynomials in one symbol with rational coefficients.
class PolyParser {
 public:
  PolyParser(const std::string& s, const std::string& var) : s_(s), var_(var) {}

  QPoly parse() {
    QPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  QPoly expr() {
    QPoly acc;
    bool neg = eat('-');
    if (!neg) eat('+');
    QPoly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  QPoly term() {
    QPoly acc = power();
    for (;;) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        QPoly d = power();
        if (d.degree() != 0) fail("division by a non-constant");
        acc *= Rational(1 / d[0]);
      } else {
        return acc;
      }
    }
  }
  QPoly power() {
    QPoly b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      QPoly r = QPoly::constant(1);
      for (unsigned long i = 0; i < e; ++i) r *= b;
      return r;
    }
    return b;
  }
  QPoly atom() {
    skip();
    if (eat('(')) {
      QPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return QPoly::constant(parse_rational_literal(s_.substr(start, pos_ - start)));
    }
    if (s_.compare(pos_, var_.size(), var_) == 0) {
      pos_ += var_.size();
      return QPoly::x();
    }
    fail("expected number or '" + var_ + "'");
  }

  const std::string& s_;
  std::string var_;
  std::size_t pos_ = 0;
};

std::pair<Rational, Rational> parse_complex_literal(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          s.end());
  if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty complex number");
  if (s.back() != 'i') return {parse_rational_literal(s), 0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im = im.substr(1);
  return {parse_rational_literal(re), parse_rational_literal(im)};
}

}  // namespace

FieldPtr parse_field_declaration(const std::string& text) {
  std::string s = text;
  auto kw = [&](const std::string& w) { return s.find(w); };
  std::size_t f = kw("field");
  if (f == std::string::npos) throw Error(ErrorKind::SyntaxError, "expected 'field' in '" + text + "'");
  std::size_t open = s.find('(', f), close = s.find(')', f);
  std::size_t where = kw(" where ");
  if (where == std::string::npos) {
    std::string rest = s.substr(f + 5);
    rest.erase(std::remove_if(rest.begin(), rest.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
               rest.end());
    if (rest == "Q") return FieldDesc::rationals();
    throw Error(ErrorKind::SyntaxError, "expected 'where' in '" + text + "'");
  }
  if (open == std::string::npos || close == std::string::npos || close < open || close > where)
    throw Error(ErrorKind::SyntaxError, "expected Q(<generator>) in '" + text + "'");
  std::string gen = s.substr(open + 1, close - open - 1);
  gen.erase(std::remove_if(gen.begin(), gen.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
            gen.end());
  if (gen.empty() || !std::isalpha(static_cast<unsigned char>(gen[0])) || gen == "x")
    throw Error(ErrorKind::SyntaxError, "bad generator name '" + gen + "'");
  std::size_t near = kw(" near ");
  std::string eq = s.substr(where + 7, near == std::string::npos ? std::string::npos : near - where - 7);
  std::size_t eqpos = eq.find('=');
  QPoly lhs = PolyParser(eq.substr(0, eqpos), gen).parse();
  if (eqpos != std::string::npos) lhs -= PolyParser(eq.substr(eqpos + 1), gen).parse();
  if (lhs.degree() < 1) throw Error(ErrorKind::SyntaxError, "defining polynomial is constant");
  lhs = monic(lhs);
  if (near == std::string::npos) {
    if (lhs.degree() == 1) return FieldDesc::create_near(lhs, 0, 0, gen);
    throw Error(ErrorKind::SyntaxError, "expected 'near <complex>' in '" + text + "'");
  }
  auto [re, im] = parse_complex_literal(s.substr(near + 6));
  return FieldDesc::create_near(lhs, re, im, gen);
}

}  // namespace rittlab
