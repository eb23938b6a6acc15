#pragma once

#include <string>
#include <vector>

#include "rittlab/ritt.hpp"

namespace rittlab {

// T_n = e^{-ix}(A(x) e^{2ix} + B(x)) over Q(i), scaled so that T_{-1} = cos x
// and T_0 = sin x. T_n equals `normalizer` times
// sqrt(pi/2) x^{|n+1/2|} J_{n+1/2}(x).
struct BesselSplit {
  int n = 0;
  KPoly A, B;
  ExpPoly T;
  FieldElement normalizer;
  int verified_order = 0;    // Taylor coefficients compared with the Bessel series
  bool conjugate_pair = false;  // B is A with i -> -i
  bool rational = false;        // A, B in Q[x]
};

BesselSplit bessel_split(int n);

// Plain Taylor coefficients of sqrt(pi/2) x^{|n+1/2|} J_{n+1/2}(x) up to x^order.
std::vector<Rational> bessel_series(int n, int order);

struct BesselCertificate {
  int n = 0;
  Certificate cert;
  KPoly prime;                 // simple irreducible factor used by Eisenstein
  bool prime_divides_B = true; // else it divides A and the reversed form is used
  bool gcd_one = false;
  bool squarefree_away_from_zero = false;
  int max_k = 0;               // Eisenstein checked for A Y^k + B, k = 1..max_k
};

// Irreducibility of T_n for n not in {-1, 0}. Throws PreconditionViolated for
// n in {-1, 0} and CertificationFailed when a check does not go through.
BesselCertificate bessel_certify(int n, int max_k = 8);

}  // namespace rittlab
