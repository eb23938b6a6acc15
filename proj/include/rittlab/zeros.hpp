#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rittlab/ball.hpp"
#include "rittlab/exppoly.hpp"

namespace rittlab {

struct Rectangle {
  Rational re_lo, re_hi, im_lo, im_hi;

  Rectangle() = default;
  Rectangle(Rational a, Rational b, Rational c, Rational d);

  Rational width() const { return re_hi - re_lo; }
  Rational height() const { return im_hi - im_lo; }
  std::complex<double> center() const;
  double diameter() const;
  bool contains(std::complex<double> z) const;
  std::string str() const;
};

// Square of half-width r around a rational point.
Rectangle square_around(const Rational& re, const Rational& im, const Rational& r);

// f with its coefficients and exponents embedded once at a fixed precision.
class NumericExpPoly {
 public:
  NumericExpPoly(const ExpPoly& f, long precision);

  CBall eval(const CBall& z) const;
  std::complex<double> eval(std::complex<double> z) const;
  long precision() const { return precision_; }

 private:
  struct Term {
    CBall beta;
    std::vector<CBall> coeffs;  // low to high
    std::complex<double> beta_d;
    std::vector<std::complex<double>> coeffs_d;
  };
  std::vector<Term> terms_;
  long precision_;
};

// Zeros in the box with multiplicity, from the argument change along the
// boundary. Precision doubles from `precision` up to 512 bits before
// ZeroOnBoundary is raised.
int winding_count(const ExpPoly& f, const Rectangle& box, long precision = 128);

struct ZeroReport {
  Rectangle box;        // isolating box from the subdivision
  int winding = 0;      // winding count over `box`
  Rectangle refined;    // small certified box around the refined zero
  std::complex<double> approx;
  int multiplicity = 0; // winding count over `refined`
};

std::vector<ZeroReport> isolate_zeros(const ExpPoly& f, const Rectangle& box, double tol = 1e-9,
                                      long precision = 128);

enum class EvidenceKind { CommonZerosVsGcd, SimpleZeros, DivisionExplainsZero };

std::string to_string(EvidenceKind k);

struct EvidenceItem {
  std::complex<double> zero;
  std::string label;
  int expected = 0;
  int observed = 0;
  bool pass = false;
};

struct EvidenceReport {
  EvidenceKind kind;
  bool pass = true;
  std::vector<EvidenceItem> items;
  std::vector<std::string> notes;
};

// common_zeros_vs_gcd: inputs {f1, f2}; the origin is excluded from the
// comparison and reported in the notes. simple_zeros: {f}.
// division_explains_zero: {f, factor}.
EvidenceReport evidence_report(EvidenceKind kind, const std::vector<ExpPoly>& inputs, const Rectangle& box,
                               double tol = 1e-9);

}  // namespace rittlab
