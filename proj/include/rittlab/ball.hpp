#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>

namespace rittlab {

// RAII handle for an MPFR floating point number.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53);
  Real(const mpq_class& q, mpfr_prec_t prec);
  Real(double d, mpfr_prec_t prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Upper bound for |v| as a double (may be +inf).
  double abs_upper() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

 private:
  mpfr_t v_;
};

// Complex ball: every value it stands for lies within `rad` of (re, im).
// The radius is an upper bound kept in double precision with upward
// corrections after each operation.
class CBall {
 public:
  explicit CBall(mpfr_prec_t prec = 53);
  CBall(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);
  CBall(Real re, Real im, double rad);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  double rad() const { return rad_; }
  mpfr_prec_t prec() const { return re_.prec(); }

  CBall& inflate(double r);

  // Upper / lower bounds on |z| over the ball.
  double abs_upper() const;
  double abs_lower() const;
  bool contains_zero() const { return abs_lower() <= 0.0; }
  bool is_exact_zero() const { return rad_ == 0.0 && re_.is_zero() && im_.is_zero(); }

  std::complex<double> center() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const;

  friend CBall operator+(const CBall& a, const CBall& b);
  friend CBall operator-(const CBall& a, const CBall& b);
  friend CBall operator*(const CBall& a, const CBall& b);
  CBall operator-() const;

 private:
  Real re_, im_;
  double rad_ = 0.0;
};

CBall exp(const CBall& z);

// Helpers for upward-rounded radius arithmetic.
double up(double x);
double up_mul(double a, double b);
double up_add(double a, double b);

}  // namespace rittlab
