#include "rittlab/bessel.hpp"

namespace rittlab {

namespace {

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

// Gamma(k + 1/2) / sqrt(pi).
Rational half_gamma(long k) {
  if (k >= 0) return Rational(factorial(2 * k)) / (pow2(2 * k) * factorial(k));
  long j = -k;
  Rational v = pow2(2 * j) * factorial(j) / Rational(factorial(2 * j));
  return j % 2 ? -v : v;
}

FieldElement conj(const FieldElement& a) {
  std::vector<Rational> c = a.coords();
  if (c.size() > 1) c[1] = -c[1];
  return FieldElement(a.field(), c);
}

KPoly conj(const KPoly& p) {
  std::vector<FieldElement> c;
  for (const auto& e : p.coeffs()) c.push_back(conj(e));
  return KPoly(p.field(), c);
}

ExpPoly generate(int n) {
  FieldPtr k = FieldDesc::gaussian();
  FieldElement i = FieldElement::generator(k), half(k, Rational(1, 2));
  ExpPoly x = ExpPoly::x(k);
  ExpPoly x2 = x * x;
  ExpPoly cosx = ExpPoly::exp(i, half) + ExpPoly::exp(-i, half);
  ExpPoly sinx = ExpPoly::exp(i, -i * half) + ExpPoly::exp(-i, i * half);
  auto c = [&](long v) { return FieldElement(k, Rational(v)); };
  if (n == -1) return cosx;
  if (n == 0) return sinx;
  if (n > 0) {
    ExpPoly prev = sinx, cur = sinx - x * cosx;
    for (int m = 1; m < n; ++m) {
      ExpPoly next = cur * c(2 * m + 1) - x2 * prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }
  ExpPoly prev = cosx, cur = -cosx - x * sinx;
  for (int m = -2; m > n; --m) {
    ExpPoly next = cur * c(2 * m + 1) - x2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

std::vector<Rational> bessel_series(int n, int order) {
  std::vector<Rational> out(order + 1, 0);
  long lift = n >= 0 ? 2L * n + 1 : 0;
  for (long m = 0; 2 * m + lift <= order; ++m) {
    Rational v = Rational(1) / (2 * Rational(factorial(m)) * half_gamma(m + n + 1) * pow2(2 * m + n));
    out[2 * m + lift] = m % 2 ? -v : v;
  }
  return out;
}

BesselSplit bessel_split(int n) {
  BesselSplit s;
  s.n = n;
  s.T = generate(n);
  FieldPtr k = s.T.field();
  FieldElement i = FieldElement::generator(k);
  for (const auto& [b, p] : s.T.terms())
    if (b != i && b != -i) throw Error(ErrorKind::CertificationFailed, "unexpected exponent " + b.str());
  s.A = s.T.coeff(i);
  s.B = s.T.coeff(-i);
  s.conjugate_pair = conj(s.A) == s.B;
  s.rational = s.A.is_rational() && s.B.is_rational();

  int order = 2 * std::abs(n) + 10;
  auto series = bessel_series(n, order);
  auto taylor = ep_taylor(s.T, order);
  std::size_t lead = 0;
  while (lead < series.size() && series[lead] == 0) ++lead;
  s.normalizer = taylor[lead] / FieldElement(k, series[lead]);
  for (int j = 0; j <= order; ++j)
    if (taylor[j] != s.normalizer * FieldElement(k, series[j]))
      throw Error(ErrorKind::CertificationFailed,
                  "Taylor coefficient " + std::to_string(j) + " of T_" + std::to_string(n) + " disagrees with the series");
  s.verified_order = order;
  return s;
}

BesselCertificate bessel_certify(int n, int max_k) {
  if (n == -1 || n == 0)
    throw Error(ErrorKind::PreconditionViolated, "T_" + std::to_string(n) + " is simple, not irreducible");
  BesselSplit s = bessel_split(n);
  FieldPtr k = s.T.field();
  BesselCertificate out;
  out.n = n;
  out.max_k = max_k;
  out.gcd_one = gcd(s.A, s.B).degree() == 0;
  if (!out.gcd_one) throw Error(ErrorKind::CertificationFailed, "gcd(A, B) is not 1");
  KPoly x = KPoly::x(k);
  out.squarefree_away_from_zero = true;
  for (const KPoly* p : {&s.A, &s.B})
    for (const auto& [f, m] : squarefree_k(*p))
      if (m > 1 && f.degree() > 0 && monic(f) != x) out.squarefree_away_from_zero = false;
  if (!out.squarefree_away_from_zero)
    throw Error(ErrorKind::CertificationFailed, "A or B has a repeated root away from 0");

  std::vector<std::string> vars{"x", "Y"};
  auto form = [&](const KPoly& lead, const KPoly& tail, int kk) {
    MPoly g = MPoly::from_kpoly(k, vars, 0, tail);
    g += MPoly::from_kpoly(k, vars, 0, lead) * MPoly::variable(k, vars, 1).pow(kk);
    return g;
  };
  auto attempt = [&](const KPoly& lead, const KPoly& tail) -> bool {
    if (tail.degree() < 1) return false;
    for (const auto& [p, m] : factor_over_k(tail).factors) {
      if (m != 1 || rem(lead, p).is_zero()) continue;
      bool ok = true;
      for (int kk = 1; kk <= max_k && ok; ++kk) ok = eisenstein_certify(form(lead, tail, kk), 1, 0, p);
      if (ok) {
        out.prime = p;
        return true;
      }
    }
    return false;
  };
  std::string shape;
  if (attempt(s.A, s.B)) {
    shape = "A(x)*Y^2 + B(x)";
  } else if (attempt(s.B, s.A)) {
    out.prime_divides_B = false;
    shape = "B(x)*Y^2 + A(x)";
  } else {
    throw Error(ErrorKind::CertificationFailed, "no Eisenstein prime for T_" + std::to_string(n));
  }
  out.cert = Certificate{CertKind::EisensteinSimpleRoot,
                         "prime " + out.prime.str() + "; form " + shape + ", Y = exp(t*x); Eisenstein for k <= " +
                             std::to_string(max_k),
                         2, true};
  return out;
}

}  // namespace rittlab
