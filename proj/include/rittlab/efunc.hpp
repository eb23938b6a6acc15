#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rittlab/qpoly.hpp"

namespace rittlab {

// Linear differential operator sum_k a_k(x) D^k, a_r != 0.
using DiffOperator = std::vector<QPoly>;

std::string operator_str(const DiffOperator& op, const std::string& fn = "f");

// Coefficient conventions: "factorial" c_n with f = sum c_n x^n / n!, and
// "plain" p_n = c_n / n! as used by exppoly.
std::vector<Rational> factorial_to_plain(const std::vector<Rational>& c);
std::vector<Rational> plain_to_factorial(const std::vector<Rational>& p);

// Power series solution of op(f) = 0 given by leading factorial coefficients.
// Coefficients past the initial data come from the recurrence
//   sum_{k,j} a_{k,j} m(m-1)...(m-j+1) c_{m+k-j} = 0,
// solved for c_{m+s} with s = max(k - j). Copies share one cache.
class HolonomicSeries {
 public:
  HolonomicSeries(DiffOperator op, std::vector<Rational> initial);

  const DiffOperator& op() const { return op_; }
  int order() const { return static_cast<int>(op_.size()) - 1; }
  int shift() const { return shift_; }
  const std::vector<Rational>& initial() const { return initial_; }

  Rational coeff(std::size_t n) const;
  // c_0 .. c_{n-1}.
  std::vector<Rational> coeffs(std::size_t n) const;
  // Re-evaluates the recurrence at m = 0 .. n-1 on computed coefficients.
  bool verify(std::size_t n) const;

 private:
  struct Term {
    int k, j;
    Rational a;
  };
  struct Cache;

  Rational equation(std::size_t m, const std::vector<Rational>& c, bool skip_leading) const;
  Rational leading(std::size_t m) const;
  void extend(std::vector<Rational>& c, std::size_t n) const;

  DiffOperator op_;
  std::vector<Rational> initial_;
  std::vector<Term> terms_;
  int shift_ = 0;
  std::shared_ptr<Cache> cache_;
};

Rational hs_coeff(const HolonomicSeries& s, std::size_t n);

// b_0 .. b_L of f^{1/m}, all in factorial convention. Computed by the
// multinomial sum over compositions (grouped as powers of f - 1 under the
// binomial convolution) and by solving m f g' = f' g; the two must agree.
std::vector<Rational> mth_root_series(const std::vector<Rational>& a, int m, std::size_t L);
std::vector<Rational> mth_root_series(const HolonomicSeries& f, int m, std::size_t L);

// Factorial coefficients of the product of two series (binomial convolution).
std::vector<Rational> egf_product(const std::vector<Rational>& a, const std::vector<Rational>& b);

struct DenominatorProfile {
  bool passed = true;
  std::optional<std::size_t> first_failure;
  std::vector<Integer> denominators;  // denominator of b_l
  Integer scale;                      // m^2 D
};

DenominatorProfile denominator_profile(const std::vector<Rational>& b, int m, const Integer& D);

// Order <= r, degree <= d operator annihilating the series, solved exactly on
// equations m < window and checked on `margin` further ones. Minimal order
// first, then minimal degree. Output coefficients are primitive integers with
// a positive leading coefficient on the top order.
std::optional<DiffOperator> guess_operator(const std::vector<Rational>& c, int r, int d, std::size_t window,
                                           std::size_t margin = 10);
std::optional<DiffOperator> guess_operator(const HolonomicSeries& s, int r, int d, std::size_t window,
                                           std::size_t margin = 10);
// Coefficients needed by guess_operator.
std::size_t guess_length(int r, std::size_t window, std::size_t margin = 10);

struct LeibnizConstants {
  int m = 0;
  Integer c_mm;   // coefficient of (g')^m in (g^m)^{(m)}
  Integer c_m1m;  // coefficient of g''(g')^{m-1} in (g^m)^{(m+1)}
  bool structure_ok = true;  // every other tuple has a zero index
  std::size_t tuples_m = 0, tuples_m1 = 0;
};

LeibnizConstants leibniz_constants(int m);

struct EntireQuotient {
  bool polynomial = false;
  QPoly h;
  std::size_t truncation = 0;
  std::size_t cutoff = 0;              // degree d0 past which the tail must vanish
  std::vector<Rational> tail;          // first nonzero tail coefficients (plain)
  std::optional<std::size_t> first_nonzero_tail;
};

// L(g)/g as a truncated plain power series; a polynomial if every coefficient
// of degree > cutoff vanishes up to the truncation. g is given by factorial
// coefficients (at least N + order(L) of them).
EntireQuotient entire_quotient_test(const DiffOperator& L, const std::vector<Rational>& g, std::size_t N,
                                    std::optional<std::size_t> cutoff = std::nullopt);
EntireQuotient entire_quotient_test(const DiffOperator& L, const HolonomicSeries& g, std::size_t N,
                                    std::optional<std::size_t> cutoff = std::nullopt);

// Plain coefficients of L(g) up to degree N-1 from plain coefficients of g.
std::vector<Rational> apply_operator_plain(const DiffOperator& L, const std::vector<Rational>& p, std::size_t N);

}  // namespace rittlab
