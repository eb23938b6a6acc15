#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rittlab/error.hpp"
#include "rittlab/exppoly.hpp"
#include "rittlab/mpoly.hpp"

namespace rittlab {

// Z-basis of the additive group generated by a set of exponents.
struct ExponentLattice {
  std::vector<FieldElement> basis;
  std::map<FieldElement, std::vector<long>> coords;

  int rank() const { return static_cast<int>(basis.size()); }
  // Integer coordinates of a lattice element; throws InvalidArgument when the
  // element is outside the lattice.
  std::vector<long> coords_of(const FieldElement& beta) const;
  FieldElement combine(const std::vector<long>& c) const;
  // The lattice (1/t) L; coordinates scale by t.
  ExponentLattice refined(int t) const;
};

// Hermite normal form over the integer coordinate vectors obtained by
// clearing denominators.
ExponentLattice exponent_lattice(const std::vector<FieldElement>& exponents);

// f_i(x) e^{gamma x} = P_i(x, e^{alpha_1 x}, ..., e^{alpha_p x}) with a single
// gamma making every coordinate vector non-negative. Variables are x, X1..Xp.
struct PolynomialModel {
  FieldElement gamma;
  ExponentLattice lattice;
  std::vector<MPoly> polys;
};
PolynomialModel polynomial_model(const std::vector<ExpPoly>& fs, int refine = 1);
std::vector<std::string> model_variables(int rank);
// P(x, e^{alpha x}) e^{-gamma x}.
ExpPoly from_model(const MPoly& p, const ExponentLattice& lattice, const FieldElement& gamma);

enum class CertKind {
  LinearInX,
  EisensteinBinomial,
  EisensteinSimpleRoot,
  RefinementBounded,
  // Irreducible over K in x alone; may split over a larger field.
  PolynomialOverK,
};
std::string_view to_string(CertKind kind);

struct Certificate {
  CertKind kind = CertKind::RefinementBounded;
  std::string witness;
  int bound = 0;          // refinement bound for RefinementBounded, k for Eisenstein forms
  bool complete = true;   // false: flagged maybe_reducible
};

// Thrown when a candidate splits after substituting X_i -> X_i^t.
class FactorSplitError : public Error {
 public:
  FactorSplitError(int t, std::vector<MPoly> factors, const std::string& detail)
      : Error(ErrorKind::FactorSplit, detail), t_(t), factors_(std::move(factors)) {}
  int t() const { return t_; }
  const std::vector<MPoly>& factors() const { return factors_; }

 private:
  int t_;
  std::vector<MPoly> factors_;
};

// The candidate is a factor of a polynomial model: variable 0 is x, the rest
// are exponential variables. bound <= 0 selects max(2, total degree^2).
Certificate certify_irreducible(const MPoly& candidate, int bound = 0);

struct IrreducibleFactor {
  ExpPoly h;  // normalized
  int mult = 1;
  Certificate cert;
};

struct RittFactorization {
  UnitE unit;
  std::vector<SimpleEForm> simples;  // unit part 1, pairwise distinct supports
  std::vector<IrreducibleFactor> irreducibles;
  int refinement = 1;  // lattice refinement that was needed

  ExpPoly expand() const;
  bool complete() const;
};

RittFactorization ritt_factor(const ExpPoly& f, int bound = 0);

}  // namespace rittlab
