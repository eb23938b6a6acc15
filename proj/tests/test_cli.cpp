#include <doctest.h>

#include <sstream>

#include "rittlab/cli.hpp"

using namespace rittlab;

namespace {

std::string error_kind(const std::string& src, const Session& s) {
  try {
    parse_value(src, s);
  } catch (const Error& e) {
    return std::string(to_string(e.kind()));
  }
  return "";
}

}  // namespace

TEST_CASE("expressions parse and print back") {
  Session s;
  FieldPtr q = s.field;
  ExpPoly x = ExpPoly::x(q);
  auto c = [&](long n, long d = 1) { return FieldElement(q, Rational(n, d)); };
  CHECK(parse_expression("x*exp(x) - 2", s) == x * ExpPoly::exp(c(1), c(1)) - ExpPoly::constant(c(2)));
  CHECK(parse_expression("exp(-x/2)^2", s) == ExpPoly::exp(c(-1), c(1)));
  CHECK(parse_expression("0.25*x - 1/4*x", s).is_zero());
  CHECK(parse_expression("-(x - 1)*(x + 1)", s) == ExpPoly::constant(c(1)) - x * x);

  for (const char* src : {"x*exp(x) - 2", "exp(2*x) - 2*exp(x) + 1", "x^3 - 1/3*x", "(x + 1)*exp(-x/3)"}) {
    ExpPoly f = parse_expression(src, s);
    CHECK(parse_expression(f.str(), s) == f);
  }

  Session g(FieldDesc::gaussian());
  ExpPoly cosx = parse_expression("exp(t*x)/2 + exp(-t*x)/2", g);
  CHECK(cosx.size() == 2);
  CHECK(parse_expression(cosx.str(), g) == cosx);
}

TEST_CASE("values: series and lists") {
  Session s;
  Value v = parse_value("ode(1, 0, 1; 1, 0)", s);
  REQUIRE(std::holds_alternative<HolonomicSeries>(v));
  auto cs = std::get<HolonomicSeries>(v).coeffs(5);
  CHECK(cs == std::vector<Rational>{1, 0, -1, 0, 1});
  Value l = parse_value("[1, 1/2, -3]", s);
  REQUIRE(std::holds_alternative<std::vector<Rational>>(l));
  CHECK(std::get<std::vector<Rational>>(l)[1] == Rational(1, 2));
}

TEST_CASE("parse errors") {
  Session s;
  CHECK(error_kind("x +", s) == "SyntaxError");
  CHECK(error_kind("x $ 1", s) == "SyntaxError");
  CHECK(error_kind("(x", s) == "SyntaxError");
  CHECK(error_kind("y + 1", s) == "UnknownSymbol");
  CHECK(error_kind("x / 0", s) == "DivisionByZero");
  CHECK(error_kind("1 / x", s) == "UnsupportedShape");
  CHECK(error_kind("exp(x^2)", s) == "ExponentNotAffine");
  CHECK(error_kind("exp(x + 1)", s) == "ExponentNotAffine");
  CHECK(error_kind("exp(exp(x))", s) == "ExponentNotAffine");
  CHECK(error_kind("ode(1, 1; 1, 1)", s) == "InconsistentInitialData");
  CHECK(error_kind("ode(1, 0, 1; 1)", s) == "InsufficientInitialData");
  CHECK(error_kind("x^-1", s) == "SyntaxError");
}

TEST_CASE("verbs and exit codes") {
  Session s;
  auto run = [&](const std::string& verb, std::vector<std::string> args) { return run_command(verb, args, s); };

  auto f = run("factor", {"x*exp(x) - x"});
  CHECK(f.exit_code == 0);
  CHECK(f.doc["complete"] == true);
  CHECK(f.doc["irreducibles"].size() == 1);
  CHECK(f.doc["simples"].size() == 1);

  CHECK(run("gcd", {"exp(2*x) - 1", "exp(3*x) - 1"}).exit_code == 0);
  CHECK(run("gcd", {"exp(x) - 2", "exp(x) - 3"}).exit_code == 1);
  auto d = run("divides", {"x", "x*exp(x) + x^2"});
  CHECK(d.exit_code == 0);
  CHECK(d.doc["result"] == "exp(x) + x");
  CHECK(run("divides", {"exp(x) - 2", "exp(x) - 3"}).exit_code == 1);
  CHECK(run("divides", {"x"}).exit_code == 2);

  auto v = run("valuation", {"x^2*(exp(x) - 1)", "--at", "0"});
  CHECK(v.exit_code == 0);
  CHECK(v.doc["v"] == 3);
  CHECK(v.doc["vanishing_order"] == 3);

  auto z = run("zeros", {"exp(x) - 1", "--rect", "-1", "1", "-7", "7"});
  CHECK(z.exit_code == 0);
  CHECK(z.doc["count"] == 3);
  CHECK(run("zeros", {"exp(x) - 1", "--rect", "1", "-1", "-7", "7"}).exit_code == 2);

  auto e = run("evidence", {"th10", "exp(2*x) - 1", "exp(3*x) - 1", "--rect", "-1", "1", "-10", "10"});
  CHECK(e.exit_code == 0);
  CHECK(e.doc["status"] == "PASS");

  auto m = run("mroot", {"ode(1, 0, 1; 1, 0)", "--m", "2", "--L", "6"});
  CHECK(m.exit_code == 0);
  CHECK(m.doc["b"][2] == "-1/2");

  auto g = run("guess-op", {"ode(1, 0, 1; 1, 0)", "--order", "2", "--degree", "0"});
  CHECK(g.exit_code == 0);
  CHECK(g.doc["operator"]["text"] == "f'' + f");
  CHECK(run("guess-op", {"[1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600, 6227020800, "
                         "87178291200, 1307674368000, 20922789888000]",
                         "--order", "1", "--degree", "0", "--window", "4", "--margin", "4"})
            .exit_code == 1);

  CHECK(run("denoms", {"[1, 1/5]", "--m", "2", "--D", "1"}).exit_code == 1);
  CHECK(run("denoms", {"ode(1, 0, 1; 1, 0)", "--m", "2", "--D", "1", "--L", "12"}).exit_code == 0);

  auto b = run("bessel", {"--n", "1"});
  CHECK(b.exit_code == 0);
  CHECK(b.doc["conjugate_pair"] == true);
  CHECK(run("bessel-certify", {"--n", "3"}).exit_code == 0);
  auto bad = run("bessel-certify", {"--n", "0"});
  CHECK(bad.exit_code == 2);
  CHECK(bad.doc["error"] == "PreconditionViolated");

  auto u = run("frobnicate", {});
  CHECK(u.exit_code == 2);
  CHECK(run("zeros", {"x", "--bogus"}).exit_code == 2);
}

TEST_CASE("scripts") {
  std::istringstream in(
      "# cos over Q(i)\n"
      "field Q(t) where t^2+1 = 0 near 0+1i\n"
      "let c = exp(t*x)/2 + exp(-t*x)/2\n"
      "set tol 1e-10\n"
      "zeros c --rect -4 4 -1 1\n"
      "gcd c 'c*x'\n");
  Session s;
  auto rs = run_script(in, s);
  REQUIRE(rs.size() == 5);
  CHECK(s.options.tol == doctest::Approx(1e-10));
  CHECK(rs[3].doc["count"] == 2);
  CHECK(rs[4].exit_code == 0);

  std::istringstream bad("let y = x\nfactor z\nfactor x\n");
  Session t;
  auto rb = run_script(bad, t);
  REQUIRE(rb.size() == 2);
  CHECK(rb[1].doc["error"] == "UnknownSymbol");
  CHECK(rb[1].doc["line"] == 2);
}

TEST_CASE("command line splitting") {
  CHECK(split_command_line("gcd 'exp(x) - 1' \"x\"") == std::vector<std::string>{"gcd", "exp(x) - 1", "x"});
  CHECK(split_command_line("  a   b ") == std::vector<std::string>{"a", "b"});
  CHECK(split_command_line("a ''") == std::vector<std::string>{"a", ""});
  CHECK_THROWS_AS(split_command_line("a 'b"), Error);
}
