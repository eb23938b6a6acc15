#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "rittlab/cli.hpp"

using namespace rittlab;

namespace {

void emit(const CommandResult& r, bool json) {
  if (json)
    std::cout << r.doc.dump(2) << '\n';
  else if (r.exit_code == 2)
    std::cerr << render_text(r) << '\n';
  else
    std::cout << render_text(r) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential polynomials: Ritt factorization, gcd, zeros, E-function tools"};
  app.prefix_command();
  app.usage("rittlab [OPTIONS] VERB [ARGS...]");
  bool json = false;
  std::string field, script, verb;
  long precision = 0;
  app.add_flag("--json", json, "print the full JSON document");
  app.add_option("--field", field, "coefficient field, e.g. \"field Q(t) where t^2+1 = 0 near 0+1i\"");
  app.add_option("--script", script, "run a script file ('-' for stdin)");
  app.add_option("--precision", precision, "ball arithmetic precision in bits");
  app.footer(
      "Verbs: factor, gcd, divides, normalize, valuation, simple-part, zeros, evidence,\n"
      "       mroot, guess-op, denoms, bessel, bessel-certify\n"
      "Exit codes: 0 success, 1 mathematical negative, 2 error");
  CLI11_PARSE(app, argc, argv);

  Session session;
  try {
    if (!field.empty()) session.set_field(parse_field_declaration(field));
    if (precision) session.set_option("precision", std::to_string(precision));
  } catch (const Error& e) {
    emit({Json{{"error", std::string(to_string(e.kind()))}, {"detail", e.detail()}}, 2}, json);
    return 2;
  }

  if (!script.empty()) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (script != "-") {
      file.open(script);
      if (!file) {
        emit({Json{{"error", "InvalidArgument"}, {"detail", "cannot open " + script}}, 2}, json);
        return 2;
      }
      in = &file;
    }
    int code = 0;
    for (const auto& r : run_script(*in, session)) {
      emit(r, json);
      code = std::max(code, r.exit_code);
    }
    return code;
  }

  std::vector<std::string> rest = app.remaining();
  if (rest.empty()) {
    std::cerr << app.help();
    return 2;
  }
  verb = rest.front();
  rest.erase(rest.begin());
  CommandResult r = run_command(verb, rest, session);
  emit(r, json);
  return r.exit_code;
}
