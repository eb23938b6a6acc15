#pragma once

#include <map>
#include <optional>
#include <string>

#include "rittlab/ritt.hpp"

namespace rittlab {

// q with f2 = f1 q, computed on the joint polynomial model (lattice divided
// by `refine`), or nullopt.
std::optional<ExpPoly> ep_divides(const ExpPoly& f1, const ExpPoly& f2, int refine = 1);

// Normalized gcd on the joint lattice; checked to divide both inputs.
ExpPoly ep_gcd(const ExpPoly& f1, const ExpPoly& f2, int refine = 1);

// gcd of two simple forms with the same support, on a common beta. The result
// has unit 1 and monic P; P constant means the gcd is a unit.
SimpleEForm simple_gcd(const SimpleEForm& g1, const SimpleEForm& g2);

// (1 - x/x0) e^{x/x0}, or x when x0 = 0.
ExpPoly h_at(FieldPtr field, const FieldElement& x0);

struct Valuation {
  ExpPoly h;  // normalized irreducible
  int v = 0;
  Certificate cert;
  int omega = 0;  // ord_0 h; the E-layer irreducible is x^{-omega} h
};

// f = unit * prod_V s_V * prod_h h^{v_h} in the E-function setting, where the
// simple parts carry their x^{-omega} and h_0 = x absorbs the omegas. An
// irreducible h with ord_0 h = omega > 0 stands for x^{-omega} h, and
// omega * v_h moves to the valuation of h_0 in the same way.
struct DecompositionView {
  UnitE unit;
  std::map<std::string, SimpleEForm> simple_parts;  // keyed by canonical beta
  std::map<std::string, Valuation> valuations;      // keyed by normalized h

  int valuation(const ExpPoly& h) const;  // h normalized; 0 when absent
  ExpPoly reconstruct() const;
};

DecompositionView decomposition_view(const ExpPoly& f, int bound = 0);

// Divisibility read off two views: simple parts divide support-wise and
// valuations are dominated.
bool view_divides(const DecompositionView& a, const DecompositionView& b);

}  // namespace rittlab
