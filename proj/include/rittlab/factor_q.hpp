#pragma once

#include <utility>
#include <vector>

#include "rittlab/qpoly.hpp"

namespace rittlab {

// Complete factorization over Q: a = scalar * prod(factor^mult), with every
// factor monic and irreducible over Q. Squarefree decomposition first, then
// Zassenhaus (Cantor-Zassenhaus modulo a small prime, multifactor Hensel
// lifting, exhaustive recombination) on each squarefree part.
struct QFactorization {
  Rational scalar;
  std::vector<std::pair<QPoly, int>> factors;
};

QFactorization factor_over_q(const QPoly& a);

bool is_irreducible_over_q(const QPoly& a);

}  // namespace rittlab
