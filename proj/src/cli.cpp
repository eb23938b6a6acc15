#include "rittlab/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "rittlab/bessel.hpp"
#include "rittlab/divgcd.hpp"
#include "rittlab/zeros.hpp"

namespace rittlab {

namespace {

// ---------------------------------------------------------------- parsing

struct Token {
  enum Kind { Number, Name, Symbol, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Token::Number, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Name, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*/^(),;[]").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Token::Symbol, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, static_cast<char>(c)) +
                                              "' at position " + std::to_string(i));
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& src, const Session& session) : toks_(tokenize(src)), session_(session) {}

  Value top() {
    Value v;
    if (peek("[")) {
      v = list();
    } else if (toks_[pos_].kind == Token::Name && toks_[pos_].text == "ode") {
      v = ode();
    } else {
      v = expr();
    }
    expect_end();
    return v;
  }

  ExpPoly top_expression() {
    ExpPoly e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool peek(const char* sym) const { return cur().kind == Token::Symbol && cur().text == sym; }
  [[noreturn]] void fail(const std::string& what) const {
    std::string near = cur().kind == Token::End ? "end of input" : "'" + cur().text + "'";
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(cur().pos) + " (" + near + ")");
  }
  void expect(const char* sym) {
    if (!peek(sym)) fail(std::string("expected '") + sym + "'");
    ++pos_;
  }
  void expect_end() {
    if (cur().kind != Token::End) fail("unexpected trailing input");
  }

  FieldPtr k() const { return session_.field; }
  ExpPoly constant(const Rational& r) const { return ExpPoly::constant(FieldElement(k(), r)); }

  ExpPoly expr() {
    ExpPoly acc = term();
    while (peek("+") || peek("-")) {
      bool minus = peek("-");
      ++pos_;
      ExpPoly t = term();
      if (minus)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  ExpPoly term() {
    ExpPoly acc = unary();
    while (peek("*") || peek("/")) {
      bool div = peek("/");
      std::size_t at = cur().pos;
      ++pos_;
      ExpPoly f = unary();
      if (!div) {
        acc *= f;
        continue;
      }
      auto c = as_constant(f);
      if (!c) throw Error(ErrorKind::UnsupportedShape, "division by a non-constant at position " + std::to_string(at));
      if (c->is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero at position " + std::to_string(at));
      acc *= c->inv();
    }
    return acc;
  }

  ExpPoly unary() {
    if (peek("-")) {
      ++pos_;
      return -unary();
    }
    if (peek("+")) {
      ++pos_;
      return unary();
    }
    return factor();
  }

  ExpPoly factor() {
    ExpPoly base = atom();
    if (peek("^")) {
      ++pos_;
      if (cur().kind != Token::Number || cur().text.find('.') != std::string::npos) fail("expected a natural exponent");
      long e = std::stol(cur().text);
      ++pos_;
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  ExpPoly atom() {
    const Token t = cur();
    if (t.kind == Token::Number) {
      ++pos_;
      return constant(parse_rational_literal(t.text));
    }
    if (peek("(")) {
      ++pos_;
      ExpPoly e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Token::Name) fail("expected an operand");
    ++pos_;
    if (t.text == "x") return ExpPoly::x(k());
    if (t.text == k()->generator()) return ExpPoly::constant(FieldElement::generator(k()));
    if (t.text == "exp") {
      expect("(");
      std::size_t at = cur().pos;
      ExpPoly arg = expr();
      expect(")");
      return ExpPoly::exp(affine_slope(arg, at), FieldElement(k(), Rational(1)));
    }
    if (t.text == "ode") throw Error(ErrorKind::UnsupportedShape, "ode(...) where an exponential polynomial is expected");
    auto it = session_.bindings.find(t.text);
    if (it != session_.bindings.end()) {
      if (const auto* e = std::get_if<ExpPoly>(&it->second)) return *e;
      throw Error(ErrorKind::UnsupportedShape, "'" + t.text + "' is a series, not an exponential polynomial");
    }
    throw Error(ErrorKind::UnknownSymbol, "'" + t.text + "' at position " + std::to_string(t.pos));
  }

  static std::optional<FieldElement> as_constant(const ExpPoly& f) {
    if (f.is_zero()) return FieldElement(f.field());
    if (f.size() != 1) return std::nullopt;
    const auto& [b, p] = *f.terms().begin();
    if (!b.is_zero() || p.degree() > 0) return std::nullopt;
    return p[0];
  }

  FieldElement affine_slope(const ExpPoly& arg, std::size_t at) const {
    if (arg.is_zero()) return FieldElement(k());
    const auto& [b, p] = *arg.terms().begin();
    if (arg.size() != 1 || !b.is_zero() || p.degree() > 1)
      throw Error(ErrorKind::ExponentNotAffine, "argument of exp at position " + std::to_string(at) + " is not c*x");
    if (!p[0].is_zero())
      throw Error(ErrorKind::ExponentNotAffine,
                  "argument of exp at position " + std::to_string(at) + " has a nonzero constant term");
    return p[1];
  }

  Rational rational_item() {
    std::size_t at = cur().pos;
    ExpPoly e = expr();
    auto c = as_constant(e);
    if (!c || !c->is_rational())
      throw Error(ErrorKind::SyntaxError, "expected a rational number at position " + std::to_string(at));
    return c->rational_value();
  }

  std::vector<Rational> list() {
    expect("[");
    std::vector<Rational> out;
    if (!peek("]")) {
      out.push_back(rational_item());
      while (peek(",")) {
        ++pos_;
        out.push_back(rational_item());
      }
    }
    expect("]");
    return out;
  }

  QPoly rational_poly() {
    std::size_t at = cur().pos;
    ExpPoly e = expr();
    if (e.is_zero()) return QPoly();
    const auto& [b, p] = *e.terms().begin();
    if (e.size() != 1 || !b.is_zero() || !p.is_rational())
      throw Error(ErrorKind::SyntaxError, "operator coefficient at position " + std::to_string(at) +
                                              " must be a polynomial in x over Q");
    return p.to_q();
  }

  HolonomicSeries ode() {
    ++pos_;
    expect("(");
    DiffOperator op{rational_poly()};
    while (peek(",")) {
      ++pos_;
      op.push_back(rational_poly());
    }
    std::vector<Rational> init;
    if (peek(";")) {
      ++pos_;
      if (!peek(")")) {
        init.push_back(rational_item());
        while (peek(",")) {
          ++pos_;
          init.push_back(rational_item());
        }
      }
    }
    expect(")");
    while (op.size() > 1 && op.back().is_zero()) op.pop_back();
    return HolonomicSeries(op, init);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Session& session_;
};

// -------------------------------------------------------------- arguments

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::vector<std::string>> flags;

  bool has(const std::string& k) const { return flags.count(k) > 0; }
  std::string get(const std::string& k, const std::string& def = "") const {
    auto it = flags.find(k);
    return it == flags.end() || it->second.empty() ? def : it->second[0];
  }
};

const std::map<std::string, int>& flag_arity() {
  static const std::map<std::string, int> a{{"rect", 4},   {"tol", 1},    {"refine", 1}, {"bound", 1},
                                            {"n", 1},      {"m", 1},      {"L", 1},      {"D", 1},
                                            {"order", 1},  {"degree", 1}, {"window", 1}, {"margin", 1},
                                            {"at", 1},     {"precision", 1}, {"maxk", 1}};
  return a;
}

Args parse_args(const std::vector<std::string>& in) {
  Args a;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const std::string& s = in[i];
    bool is_flag = s.size() > 2 && s[0] == '-' && s[1] == '-';
    if (!is_flag) {
      a.positional.push_back(s);
      continue;
    }
    std::string name = s.substr(2);
    auto it = flag_arity().find(name);
    if (it == flag_arity().end()) throw Error(ErrorKind::InvalidArgument, "unknown option --" + name);
    if (i + it->second >= in.size()) throw Error(ErrorKind::InvalidArgument, "--" + name + " needs " +
                                                                                 std::to_string(it->second) + " value(s)");
    std::vector<std::string> vals(in.begin() + i + 1, in.begin() + i + 1 + it->second);
    a.flags[name] = vals;
    i += it->second;
  }
  return a;
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, what + " must be an integer, got '" + s + "'");
  }
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, what + " must be a number, got '" + s + "'");
  }
}

void need(const Args& a, std::size_t n, const std::string& verb) {
  if (a.positional.size() != n)
    throw Error(ErrorKind::InvalidArgument, verb + " takes " + std::to_string(n) + " expression(s), got " +
                                                std::to_string(a.positional.size()));
}

// ------------------------------------------------------------ JSON output

Json fe_json(const FieldElement& e) {
  std::string coords = "[";
  std::size_t d = e.field() ? static_cast<std::size_t>(e.field()->degree()) : 1;
  for (std::size_t i = 0; i < d; ++i) coords += (i ? ", " : "") + e.coord(i).get_str();
  coords += "]";
  return Json{{"value", e.str()}, {"coords", coords}};
}

Json unit_json(const UnitE& u) {
  return Json{{"lambda", fe_json(u.lambda)}, {"alpha", fe_json(u.alpha)}, {"text", unit_str(u)}};
}

Json cert_json(const Certificate& c) {
  return Json{{"kind", std::string(to_string(c.kind))}, {"witness", c.witness}, {"bound", c.bound},
              {"complete", c.complete}};
}

Json simple_json(const SimpleEForm& s) {
  return Json{{"beta", fe_json(s.beta)}, {"P", s.P.str("X")}, {"omega", s.omega}, {"unit", unit_json(s.unit)},
              {"numerator", s.numerator().str()}, {"text", s.str()}};
}

Json rect_json(const Rectangle& r) {
  return Json{{"re", {r.re_lo.get_str(), r.re_hi.get_str()}}, {"im", {r.im_lo.get_str(), r.im_hi.get_str()}}};
}

Json approx_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(q.get_str());
  return a;
}

Json operator_json(const DiffOperator& op) {
  Json coeffs = Json::array();
  for (const auto& p : op) coeffs.push_back(p.str());
  return Json{{"coefficients", coeffs}, {"text", operator_str(op)}};
}

// ------------------------------------------------------------------ verbs

Rectangle rect_arg(const Args& a) {
  if (!a.has("rect")) throw Error(ErrorKind::InvalidArgument, "--rect re_lo re_hi im_lo im_hi is required");
  const auto& r = a.flags.at("rect");
  return Rectangle(parse_rational_literal(r[0]), parse_rational_literal(r[1]), parse_rational_literal(r[2]),
                   parse_rational_literal(r[3]));
}

// Factorial coefficients c_0..c_{n-1} of any series-like value.
std::vector<Rational> series_coeffs(const Value& v, std::size_t n) {
  if (const auto* s = std::get_if<HolonomicSeries>(&v)) return s->coeffs(n);
  if (const auto* l = std::get_if<std::vector<Rational>>(&v)) {
    if (l->size() < n)
      throw Error(ErrorKind::InsufficientInitialData,
                  "list has " + std::to_string(l->size()) + " coefficients, need " + std::to_string(n));
    return std::vector<Rational>(l->begin(), l->begin() + n);
  }
  const auto& f = std::get<ExpPoly>(v);
  std::vector<Rational> plain;
  for (const auto& c : ep_taylor(f, static_cast<int>(n) - 1)) {
    if (!c.is_rational()) throw Error(ErrorKind::InvalidArgument, "series coefficients must be rational");
    plain.push_back(c.rational_value());
  }
  return plain_to_factorial(plain);
}

CommandResult verb_factor(const Args& a, Session& s) {
  need(a, 1, "factor");
  ExpPoly f = parse_expression(a.positional[0], s);
  RittFactorization r = ritt_factor(f, a.has("bound") ? to_long(a.get("bound"), "bound") : s.options.bound);
  Json simples = Json::array(), irr = Json::array();
  for (const auto& p : r.simples) simples.push_back(simple_json(p));
  for (const auto& h : r.irreducibles)
    irr.push_back(Json{{"h", h.h.str()}, {"mult", h.mult}, {"certificate", cert_json(h.cert)}});
  Json d{{"verb", "factor"},        {"input", f.str()},      {"unit", unit_json(r.unit)},
         {"simples", simples},      {"irreducibles", irr},   {"refinement", r.refinement},
         {"complete", r.complete()}};
  std::ostringstream os;
  os << unit_str(r.unit);
  for (const auto& p : r.simples) os << " * [" << p.numerator().str() << "]";
  for (const auto& h : r.irreducibles) os << " * (" << h.h.str() << ")" << (h.mult > 1 ? "^" + std::to_string(h.mult) : "");
  d["summary"] = os.str();
  return {d, 0};
}

CommandResult verb_gcd(const Args& a, Session& s) {
  need(a, 2, "gcd");
  ExpPoly f = parse_expression(a.positional[0], s), g = parse_expression(a.positional[1], s);
  int refine = a.has("refine") ? static_cast<int>(to_long(a.get("refine"), "refine")) : s.options.refine;
  ExpPoly h = ep_gcd(f, g, refine);
  bool coprime = h == ExpPoly::constant(FieldElement(s.field, Rational(1)));
  Json d{{"verb", "gcd"}, {"inputs", {f.str(), g.str()}}, {"result", h.str()}, {"coprime", coprime},
         {"summary", "gcd = " + h.str()}};
  return {d, coprime ? 1 : 0};
}

CommandResult verb_divides(const Args& a, Session& s) {
  need(a, 2, "divides");
  ExpPoly f = parse_expression(a.positional[0], s), g = parse_expression(a.positional[1], s);
  int refine = a.has("refine") ? static_cast<int>(to_long(a.get("refine"), "refine")) : s.options.refine;
  auto q = ep_divides(f, g, refine);
  Json d{{"verb", "divides"}, {"divisor", f.str()}, {"dividend", g.str()}, {"divides", q.has_value()}};
  d["result"] = q ? Json(q->str()) : Json(nullptr);
  d["summary"] = q ? "quotient = " + q->str() : "does not divide";
  return {d, q ? 0 : 1};
}

CommandResult verb_normalize(const Args& a, Session& s) {
  need(a, 1, "normalize");
  ExpPoly f = parse_expression(a.positional[0], s);
  auto [u, g] = ep_normalize(f);
  Json d{{"verb", "normalize"}, {"input", f.str()}, {"unit", unit_json(u)}, {"result", g.str()},
         {"summary", g.str()}};
  return {d, 0};
}

Json view_json(const DecompositionView& v) {
  Json simples = Json::array(), vals = Json::array();
  for (const auto& [key, sp] : v.simple_parts) simples.push_back(simple_json(sp));
  for (const auto& [key, val] : v.valuations)
    vals.push_back(
        Json{{"h", val.h.str()}, {"v", val.v}, {"omega", val.omega}, {"certificate", cert_json(val.cert)}});
  return Json{{"unit", unit_json(v.unit)}, {"simple_parts", simples}, {"valuations", vals}};
}

CommandResult verb_valuation(const Args& a, Session& s) {
  need(a, 1, "valuation");
  ExpPoly f = parse_expression(a.positional[0], s);
  DecompositionView v = decomposition_view(f, a.has("bound") ? to_long(a.get("bound"), "bound") : s.options.bound);
  Json d{{"verb", "valuation"}, {"input", f.str()}};
  Json vj = view_json(v);
  for (auto it = vj.begin(); it != vj.end(); ++it) d[it.key()] = it.value();
  std::ostringstream os;
  if (a.has("at")) {
    ExpPoly pt = parse_expression(a.get("at"), s);
    if (!(pt.is_zero() || (pt.size() == 1 && pt.terms().begin()->first.is_zero() &&
                           pt.terms().begin()->second.degree() == 0)))
      throw Error(ErrorKind::InvalidArgument, "--at needs a constant in K");
    FieldElement x0 = pt.is_zero() ? FieldElement(s.field) : pt.terms().begin()->second[0];
    ExpPoly h = h_at(s.field, x0);
    int val = v.valuation(h), order = vanishing_order_algebraic(f, x0);
    d["at"] = fe_json(x0);
    d["h"] = h.str();
    d["v"] = val;
    d["vanishing_order"] = order;
    os << "v_h(f) = " << val << " at " << x0.str() << " (vanishing order " << order << ")";
  } else {
    os << v.valuations.size() << " irreducible valuation(s), " << v.simple_parts.size() << " simple part(s)";
  }
  d["summary"] = os.str();
  return {d, 0};
}

CommandResult verb_simple_part(const Args& a, Session& s) {
  need(a, 1, "simple-part");
  ExpPoly f = parse_expression(a.positional[0], s);
  DecompositionView v = decomposition_view(f, s.options.bound);
  Json parts = Json::array();
  std::string text;
  for (const auto& [key, sp] : v.simple_parts) {
    parts.push_back(simple_json(sp));
    text += (text.empty() ? "" : "; ") + sp.str();
  }
  Json d{{"verb", "simple-part"}, {"input", f.str()}, {"simple_parts", parts},
         {"summary", text.empty() ? std::string("no simple part") : text}};
  return {d, v.simple_parts.empty() ? 1 : 0};
}

double tol_arg(const Args& a, const Session& s) {
  double t = a.has("tol") ? to_double(a.get("tol"), "tol") : s.options.tol;
  if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  return t;
}

CommandResult verb_zeros(const Args& a, Session& s) {
  need(a, 1, "zeros");
  ExpPoly f = parse_expression(a.positional[0], s);
  Rectangle box = rect_arg(a);
  auto zs = isolate_zeros(f, box, tol_arg(a, s), s.options.precision);
  Json items = Json::array();
  int total = 0;
  for (const auto& z : zs) {
    items.push_back(Json{{"approx", approx_json(z.approx)}, {"multiplicity", z.multiplicity}, {"winding", z.winding},
                         {"box", rect_json(z.box)}, {"refined", rect_json(z.refined)}});
    total += z.multiplicity;
  }
  Json d{{"verb", "zeros"},  {"input", f.str()}, {"rect", rect_json(box)}, {"zeros", items},
         {"count", total}, {"summary", std::to_string(zs.size()) + " zero(s), " + std::to_string(total) +
                                            " with multiplicity"}};
  return {d, 0};
}

CommandResult verb_evidence(const Args& a, Session& s) {
  if (a.positional.empty()) throw Error(ErrorKind::InvalidArgument, "evidence needs th10|simple|explain");
  const std::string& which = a.positional[0];
  EvidenceKind kind;
  std::size_t n;
  if (which == "th10") {
    kind = EvidenceKind::CommonZerosVsGcd;
    n = 2;
  } else if (which == "simple") {
    kind = EvidenceKind::SimpleZeros;
    n = 1;
  } else if (which == "explain") {
    kind = EvidenceKind::DivisionExplainsZero;
    n = 2;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown evidence kind '" + which + "'");
  }
  if (a.positional.size() != n + 1)
    throw Error(ErrorKind::InvalidArgument, "evidence " + which + " takes " + std::to_string(n) + " expression(s)");
  std::vector<ExpPoly> in;
  for (std::size_t i = 1; i <= n; ++i) in.push_back(parse_expression(a.positional[i], s));
  Rectangle box = rect_arg(a);
  EvidenceReport r = evidence_report(kind, in, box, tol_arg(a, s));
  Json items = Json::array();
  for (const auto& it : r.items)
    items.push_back(Json{{"zero", approx_json(it.zero)}, {"label", it.label}, {"expected", it.expected},
                         {"observed", it.observed}, {"status", it.pass ? "PASS" : "FAIL"}});
  Json inputs = Json::array();
  for (const auto& f : in) inputs.push_back(f.str());
  Json d{{"verb", "evidence"},       {"kind", to_string(kind)}, {"inputs", inputs}, {"rect", rect_json(box)},
         {"status", r.pass ? "PASS" : "FAIL"}, {"items", items}, {"notes", r.notes}};
  d["summary"] = std::string(r.pass ? "PASS" : "FAIL") + " (" + std::to_string(r.items.size()) + " item(s))";
  return {d, r.pass ? 0 : 1};
}

int int_flag(const Args& a, const std::string& k, int def) {
  return a.has(k) ? static_cast<int>(to_long(a.get(k), k)) : def;
}

CommandResult verb_mroot(const Args& a, Session& s) {
  need(a, 1, "mroot");
  Value v = parse_value(a.positional[0], s);
  int m = int_flag(a, "m", 2), L = int_flag(a, "L", 20);
  if (L < 0) throw Error(ErrorKind::InvalidArgument, "L must be non-negative");
  auto b = mth_root_series(series_coeffs(v, L + 1), m, L);
  Json d{{"verb", "mroot"}, {"m", m}, {"L", L}, {"b", rationals_json(b)}, {"cross_check", "agree"}};
  std::string head;
  for (std::size_t i = 0; i < b.size() && i < 8; ++i) head += (i ? ", " : "") + b[i].get_str();
  d["summary"] = "b = [" + head + (b.size() > 8 ? ", ...]" : "]");
  return {d, 0};
}

CommandResult verb_guess(const Args& a, Session& s) {
  need(a, 1, "guess-op");
  Value v = parse_value(a.positional[0], s);
  int r = int_flag(a, "order", 2), dg = int_flag(a, "degree", 0);
  std::size_t margin = int_flag(a, "margin", 10);
  std::size_t window = int_flag(a, "window", (r + 1) * (dg + 1) + 10);
  auto op = guess_operator(series_coeffs(v, guess_length(r, window, margin)), r, dg, window, margin);
  Json d{{"verb", "guess-op"}, {"order", r}, {"degree", dg}, {"window", window}, {"margin", margin}};
  d["operator"] = op ? operator_json(*op) : Json(nullptr);
  d["summary"] = op ? operator_str(*op) + " = 0" : "no operator at these bounds";
  return {d, op ? 0 : 1};
}

CommandResult verb_denoms(const Args& a, Session& s) {
  need(a, 1, "denoms");
  Value v = parse_value(a.positional[0], s);
  int m = int_flag(a, "m", 2);
  Integer D(a.get("D", "1"));
  std::vector<Rational> b;
  if (const auto* l = std::get_if<std::vector<Rational>>(&v))
    b = *l;
  else
    b = mth_root_series(series_coeffs(v, int_flag(a, "L", 20) + 1), m, int_flag(a, "L", 20));
  auto p = denominator_profile(b, m, D);
  Json dens = Json::array();
  for (const auto& q : p.denominators) dens.push_back(q.get_str());
  Json d{{"verb", "denoms"}, {"m", m}, {"D", D.get_str()}, {"scale", p.scale.get_str()},
         {"status", p.passed ? "PASS" : "FAIL"}, {"denominators", dens}};
  d["first_failure"] = p.first_failure ? Json(*p.first_failure) : Json(nullptr);
  d["summary"] = p.passed ? "PASS: (m^2 D)^l b_l integral for l < " + std::to_string(b.size())
                          : "FAIL at l = " + std::to_string(*p.first_failure);
  return {d, p.passed ? 0 : 1};
}

CommandResult verb_bessel(const Args& a, Session&) {
  if (!a.has("n")) throw Error(ErrorKind::InvalidArgument, "bessel needs --n");
  int n = static_cast<int>(to_long(a.get("n"), "n"));
  BesselSplit b = bessel_split(n);
  Json d{{"verb", "bessel"},
         {"n", n},
         {"field", b.T.field()->declaration()},
         {"A", b.A.str()},
         {"B", b.B.str()},
         {"T", b.T.str()},
         {"normalizer", fe_json(b.normalizer)},
         {"verified_order", b.verified_order},
         {"conjugate_pair", b.conjugate_pair},
         {"rational", b.rational},
         {"summary", "T_" + std::to_string(n) + " = " + b.T.str()}};
  return {d, 0};
}

CommandResult verb_bessel_certify(const Args& a, Session&) {
  if (!a.has("n")) throw Error(ErrorKind::InvalidArgument, "bessel-certify needs --n");
  int n = static_cast<int>(to_long(a.get("n"), "n"));
  BesselCertificate c = bessel_certify(n, int_flag(a, "maxk", 8));
  Json d{{"verb", "bessel-certify"},
         {"n", n},
         {"certificate", cert_json(c.cert)},
         {"prime", c.prime.str()},
         {"prime_divides", c.prime_divides_B ? "B" : "A"},
         {"gcd_one", c.gcd_one},
         {"squarefree_away_from_zero", c.squarefree_away_from_zero},
         {"max_k", c.max_k},
         {"summary", "T_" + std::to_string(n) + " irreducible: " + c.cert.witness}};
  return {d, 0};
}

CommandResult error_result(const std::string& kind, const std::string& detail) {
  return {Json{{"error", kind}, {"detail", detail}}, 2};
}

}  // namespace

Session::Session(FieldPtr f) : field(std::move(f)) {
  if (const char* p = std::getenv("RITTLAB_PRECISION")) set_option("precision", p);
}

void Session::set_field(FieldPtr f) {
  field = std::move(f);
  bindings.clear();
}

void Session::set_option(const std::string& name, const std::string& value) {
  if (name == "tol") {
    double t = to_double(value, "tol");
    if (!(t > 0 && t < 1)) throw Error(ErrorKind::InvalidArgument, "tol must lie in (0, 1)");
    options.tol = t;
  } else if (name == "refine") {
    long r = to_long(value, "refine");
    if (r < 1 || r > 64) throw Error(ErrorKind::InvalidArgument, "refine must lie in 1..64");
    options.refine = static_cast<int>(r);
  } else if (name == "bound") {
    long b = to_long(value, "bound");
    if (b < 0 || b > 1000) throw Error(ErrorKind::InvalidArgument, "bound must lie in 0..1000");
    options.bound = static_cast<int>(b);
  } else if (name == "precision") {
    long p = to_long(value, "precision");
    if (p < 53 || p > 4096) throw Error(ErrorKind::InvalidArgument, "precision must lie in 53..4096 bits");
    options.precision = p;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown option '" + name + "'");
  }
}

ExpPoly parse_expression(const std::string& src, const Session& session) {
  return Parser(src, session).top_expression();
}

Value parse_value(const std::string& src, const Session& session) { return Parser(src, session).top(); }

CommandResult run_command(const std::string& verb, const std::vector<std::string>& raw, Session& session) {
  try {
    Args a = parse_args(raw);
    if (a.has("precision")) session.set_option("precision", a.get("precision"));
    if (verb == "factor") return verb_factor(a, session);
    if (verb == "gcd") return verb_gcd(a, session);
    if (verb == "divides") return verb_divides(a, session);
    if (verb == "normalize") return verb_normalize(a, session);
    if (verb == "valuation") return verb_valuation(a, session);
    if (verb == "simple-part") return verb_simple_part(a, session);
    if (verb == "zeros") return verb_zeros(a, session);
    if (verb == "evidence") return verb_evidence(a, session);
    if (verb == "mroot") return verb_mroot(a, session);
    if (verb == "guess-op") return verb_guess(a, session);
    if (verb == "denoms") return verb_denoms(a, session);
    if (verb == "bessel") return verb_bessel(a, session);
    if (verb == "bessel-certify") return verb_bessel_certify(a, session);
    return error_result("InvalidArgument", "unknown verb '" + verb + "'");
  } catch (const Error& e) {
    return error_result(std::string(to_string(e.kind())), e.detail());
  } catch (const std::exception& e) {
    return error_result("InvalidArgument", e.what());
  }
}

std::vector<std::string> split_command_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool any = false;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote)
        quote = 0;
      else
        cur += c;
    } else if (c == '"' || c == '\'') {
      quote = c;
      any = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (any || !cur.empty()) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
    }
  }
  if (quote) throw Error(ErrorKind::SyntaxError, "unterminated quote");
  if (any || !cur.empty()) out.push_back(cur);
  return out;
}

std::vector<CommandResult> run_script(std::istream& in, Session& session) {
  std::vector<CommandResult> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    CommandResult r;
    try {
      if (line.rfind("field", 0) == 0 && (line.size() == 5 || std::isspace(static_cast<unsigned char>(line[5])))) {
        session.set_field(parse_field_declaration(line));
        r.doc = Json{{"line", lineno}, {"field", session.field->declaration()}, {"summary", session.field->declaration()}};
      } else if (line.rfind("let ", 0) == 0) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::SyntaxError, "let needs '='");
        std::string name = line.substr(4, eq - 4);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') ||
            name == "x" || name == "exp" || name == "ode" || name == session.field->generator())
          throw Error(ErrorKind::SyntaxError, "bad binding name '" + name + "'");
        Value v = parse_value(line.substr(eq + 1), session);
        std::string shown = std::holds_alternative<ExpPoly>(v) ? std::get<ExpPoly>(v).str() : std::string("series");
        session.bindings.insert_or_assign(name, std::move(v));
        r.doc = Json{{"line", lineno}, {"let", name}, {"value", shown}, {"summary", name + " = " + shown}};
      } else if (line.rfind("set ", 0) == 0) {
        auto parts = split_command_line(line);
        if (parts.size() != 3) throw Error(ErrorKind::SyntaxError, "set takes a name and a value");
        session.set_option(parts[1], parts[2]);
        r.doc = Json{{"line", lineno}, {"set", parts[1]}, {"value", parts[2]}, {"summary", parts[1] + " = " + parts[2]}};
      } else {
        auto parts = split_command_line(line);
        std::vector<std::string> args(parts.begin() + 1, parts.end());
        r = run_command(parts[0], args, session);
        r.doc["line"] = lineno;
      }
    } catch (const Error& e) {
      r = error_result(std::string(to_string(e.kind())), e.detail());
      r.doc["line"] = lineno;
    }
    out.push_back(r);
    if (r.exit_code == 2) break;
  }
  return out;
}

std::string render_text(const CommandResult& r) {
  if (r.doc.contains("error"))
    return "error: " + r.doc["error"].get<std::string>() + ": " + r.doc["detail"].get<std::string>();
  std::ostringstream os;
  if (r.doc.contains("summary")) os << r.doc["summary"].get<std::string>();
  if (r.doc.contains("zeros"))
    for (const auto& z : r.doc["zeros"])
      os << "\n  " << z["approx"]["re"].get<double>() << (z["approx"]["im"].get<double>() < 0 ? " - " : " + ")
         << std::abs(z["approx"]["im"].get<double>()) << "i  (multiplicity " << z["multiplicity"].get<int>() << ")";
  if (r.doc.contains("items"))
    for (const auto& it : r.doc["items"])
      os << "\n  " << it["status"].get<std::string>() << "  " << it["label"].get<std::string>() << " at "
         << it["zero"]["re"].get<double>() << (it["zero"]["im"].get<double>() < 0 ? " - " : " + ")
         << std::abs(it["zero"]["im"].get<double>()) << "i  expected " << it["expected"].get<int>() << ", observed "
         << it["observed"].get<int>();
  if (r.doc.contains("irreducibles"))
    for (const auto& h : r.doc["irreducibles"])
      os << "\n  " << h["h"].get<std::string>() << "  [" << h["certificate"]["kind"].get<std::string>() << "]";
  return os.str();
}

}  // namespace rittlab
