#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rittlab/efunc.hpp"
#include "rittlab/error.hpp"
#include "rittlab/exppoly.hpp"

namespace rittlab {

using Json = nlohmann::ordered_json;

// A parsed input: an exponential polynomial, a series given by `ode(...)`,
// or a literal list of factorial coefficients `[c0, c1, ...]`.
using Value = std::variant<ExpPoly, HolonomicSeries, std::vector<Rational>>;

struct SessionOptions {
  double tol = 1e-9;
  int refine = 1;
  int bound = 0;
  long precision = 128;
};

struct Session {
  FieldPtr field;
  std::map<std::string, Value> bindings;
  SessionOptions options;

  // Precision defaults to RITTLAB_PRECISION when set.
  explicit Session(FieldPtr f = FieldDesc::rationals());

  // Changing the field drops the bindings.
  void set_field(FieldPtr f);
  // tol, refine, bound, precision; validated here.
  void set_option(const std::string& name, const std::string& value);
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*          ('/' by nonzero constants)
//   unary  := '-' unary | factor
//   factor := atom ('^' nat)?
//   atom   := number | generator | 'x' | name | 'exp' '(' expr ')' | '(' expr ')'
// The argument of exp must be c*x with c in K.
ExpPoly parse_expression(const std::string& src, const Session& session);
// Also accepts `ode(a_0, ..., a_r; c_0, c_1, ...)` with a_k in Q[x] and
// initial factorial coefficients c_i, and `[c0, c1, ...]`.
Value parse_value(const std::string& src, const Session& session);

struct CommandResult {
  Json doc;
  int exit_code = 0;  // 0 success, 1 mathematical negative, 2 error
};

// Verbs: factor, gcd, divides, normalize, valuation, simple-part, zeros,
// evidence, mroot, guess-op, denoms, bessel, bessel-certify. Errors are
// returned as {"error": kind, "detail": ...} with exit code 2.
CommandResult run_command(const std::string& verb, const std::vector<std::string>& args, Session& session);

// Line-oriented script: `field ...`, `let name = expr`, `set key value`,
// verbs with arguments; `#` starts a comment. Stops at the first error.
std::vector<CommandResult> run_script(std::istream& in, Session& session);

// Splits a command line on whitespace, honoring single and double quotes.
std::vector<std::string> split_command_line(const std::string& line);

// Short human-readable rendering of a result.
std::string render_text(const CommandResult& r);

}  // namespace rittlab
