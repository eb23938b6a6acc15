#include "rittlab/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rittlab {

double up(double x) {
  if (x == 0.0) return 0.0;
  if (!(x > 0)) return x < 0 ? std::numeric_limits<double>::denorm_min() : x;
  return x * (1.0 + 0x1p-50) + std::numeric_limits<double>::denorm_min();
}
double up_mul(double a, double b) { return up(a * b); }
double up_add(double a, double b) { return up(a + b); }

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(const mpq_class& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(double d, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, d, MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

double Real::abs_upper() const { return std::fabs(mpfr_get_d(v_, MPFR_RNDA)); }

namespace {

double abs_lower_of(const Real& r) { return std::fabs(mpfr_get_d(r.get(), MPFR_RNDZ)); }

// Upper bound for (|re| + |im|) of a center.
double l1_upper(const Real& re, const Real& im) { return up_add(re.abs_upper(), im.abs_upper()); }

double rounding_term(double magnitude, mpfr_prec_t prec, int extra_bits) {
  return up(std::ldexp(magnitude, extra_bits - static_cast<int>(prec)));
}

}  // namespace

CBall::CBall(mpfr_prec_t prec) : re_(prec), im_(prec) {}

CBall::CBall(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) : re_(prec), im_(prec) {
  int t1 = mpfr_set_q(re_.get(), re.get_mpq_t(), MPFR_RNDN);
  int t2 = mpfr_set_q(im_.get(), im.get_mpq_t(), MPFR_RNDN);
  if (t1 != 0 || t2 != 0) rad_ = rounding_term(l1_upper(re_, im_), prec, 0);
}

CBall::CBall(Real re, Real im, double rad) : re_(std::move(re)), im_(std::move(im)), rad_(rad) {}

CBall& CBall::inflate(double r) {
  rad_ = up_add(rad_, r);
  return *this;
}

double CBall::abs_upper() const {
  return up_add(up(std::hypot(re_.abs_upper(), im_.abs_upper())), rad_);
}

double CBall::abs_lower() const {
  double c = std::hypot(abs_lower_of(re_), abs_lower_of(im_)) * (1.0 - 0x1p-50);
  return std::max(0.0, c - rad_);
}

std::string CBall::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << re_.to_double() << (im_.to_double() < 0 ? " - " : " + ") << std::fabs(im_.to_double())
     << "i) +/- " << rad_;
  return os.str();
}

CBall operator+(const CBall& a, const CBall& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  Real re(p), im(p);
  int t1 = mpfr_add(re.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  int t2 = mpfr_add(im.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  double rad = up_add(a.rad_, b.rad_);
  if (t1 || t2) rad = up_add(rad, rounding_term(l1_upper(re, im), p, 0));
  return CBall(std::move(re), std::move(im), rad);
}

CBall CBall::operator-() const {
  Real re(prec()), im(prec());
  mpfr_neg(re.get(), re_.get(), MPFR_RNDN);
  mpfr_neg(im.get(), im_.get(), MPFR_RNDN);
  return CBall(std::move(re), std::move(im), rad_);
}

CBall operator-(const CBall& a, const CBall& b) { return a + (-b); }

CBall operator*(const CBall& a, const CBall& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  Real re(p), im(p), t(p);
  int inexact = 0;
  inexact |= mpfr_mul(re.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  inexact |= mpfr_mul(t.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  inexact |= mpfr_sub(re.get(), re.get(), t.get(), MPFR_RNDN);
  inexact |= mpfr_mul(im.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
  inexact |= mpfr_mul(t.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  inexact |= mpfr_add(im.get(), im.get(), t.get(), MPFR_RNDN);
  double na = l1_upper(a.re_, a.im_);
  double nb = l1_upper(b.re_, b.im_);
  double rad = up_add(up_add(up_mul(na, b.rad_), up_mul(nb, a.rad_)), up_mul(a.rad_, b.rad_));
  if (inexact) rad = up_add(rad, rounding_term(up_mul(na, nb), p, 2));
  return CBall(std::move(re), std::move(im), rad);
}

CBall exp(const CBall& z) {
  mpfr_prec_t p = z.prec();
  if (z.is_exact_zero()) return CBall(mpq_class(1), mpq_class(0), p);
  Real ex(p), c(p), s(p), re(p), im(p);
  mpfr_exp(ex.get(), z.re().get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
  mpfr_mul(re.get(), ex.get(), c.get(), MPFR_RNDN);
  mpfr_mul(im.get(), ex.get(), s.get(), MPFR_RNDN);
  Real ex_up(p);
  mpfr_exp(ex_up.get(), z.re().get(), MPFR_RNDU);
  double e = ex_up.abs_upper();
  double grow = up(std::expm1(z.rad()) * (1.0 + 0x1p-48));
  double rad = up_add(up_mul(e, grow), rounding_term(e, p, 4));
  return CBall(std::move(re), std::move(im), rad);
}

}  // namespace rittlab
