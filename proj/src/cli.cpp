#include "creal/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "creal/analysis.hpp"
#include "creal/cover.hpp"
#include "creal/crn.hpp"
#include "creal/errors.hpp"
#include "creal/expression.hpp"
#include "creal/machine.hpp"
#include "creal/rational.hpp"

namespace cr::cli {

namespace {

constexpr const char* kRationalGrammar = "[-]digits[/digits] or [-]digits[.digits]";

[[noreturn]] void bad_flag(const std::string& flag, const std::string& value, const char* grammar) {
  throw ParseError(flag + ": got '" + value + "', expected " + grammar);
}

Rational rational_flag(const std::string& flag, const std::string& value) {
  try {
    return Rational::parse(value);
  } catch (const ParseError&) {
    bad_flag(flag, value, kRationalGrammar);
  }
}

std::uint64_t natural_flag(const std::string& flag, const std::string& value) {
  try {
    return parse_natural(value);
  } catch (const ParseError&) {
    bad_flag(flag, value, "a natural number (digits)");
  }
}

Precision precision_flag(const std::string& flag, const std::string& value) {
  const auto n = natural_flag(flag, value);
  if (n > 100'000) bad_flag(flag, value, "a precision level <= 100000");
  return static_cast<Precision>(n);
}

std::vector<std::size_t> index_list_flag(const std::string& flag, const std::string& value) {
  std::vector<std::size_t> out;
  std::string_view rest = value;
  try {
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      out.push_back(static_cast<std::size_t>(parse_natural(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
      if (rest.empty()) throw ParseError("trailing comma");
    }
  } catch (const ParseError&) {
    bad_flag(flag, value, "comma-separated element indices, e.g. 0,1,2");
  }
  return out;
}

std::vector<Rational> rational_list_flag(const std::string& flag, const std::string& value) {
  std::vector<Rational> out;
  std::string_view rest = value;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(rational_flag(flag, std::string(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> range_flag(const std::string& flag, const std::string& value) {
  const auto dots = value.find("..");
  if (dots == std::string::npos) bad_flag(flag, value, "an inclusive range A..B");
  const auto first = natural_flag(flag, value.substr(0, dots));
  const auto last = natural_flag(flag, value.substr(dots + 2));
  if (first > last) bad_flag(flag, value, "an inclusive range A..B with A <= B");
  return {first, last};
}

struct Commands {
  std::ostream& out;
  std::function<int()> action;

  // rat
  std::string expr;
  std::string cmp;
  // crn / waiting / reduce
  std::string prec;
  std::string prog;
  std::string input;
  std::string targets = "geometric";
  std::string probe = "step@1/2";
  // machine
  std::string budget;
  std::string inputs;
  // bisect
  std::string oracle;
  std::string lo;
  std::string hi;
  std::string steps;
  std::string transcript;
  // cover
  std::string cover;
  std::string modulus = "lebesgue";
  std::string samples;
  std::string selected;
  std::string cert;
  std::string out_path;

  int rat() {
    const Rational value = evaluate_rational(*parse_expression(expr));
    if (cmp.empty()) {
      out << value << '\n';
    } else {
      out << to_string(compare(value, evaluate_rational(*parse_expression(cmp)))) << '\n';
    }
    return kOk;
  }

  int crn_approx() {
    BuiltinRegistry builtins;
    register_analysis_builtins(builtins);
    const Precision n = precision_flag("--prec", prec);
    const Crn x = build_crn(*parse_expression(expr), builtins);
    out << format_approx(x.approx(n), n) << '\n';
    return kOk;
  }

  int machine_run() {
    const Program program = Program::load(prog);
    out << describe(run_for(program, natural_flag("--input", input), natural_flag("--budget", budget)))
        << '\n';
    return kOk;
  }

  int machine_dovetail() {
    const Program program = Program::load(prog);
    const auto [first, last] = range_flag("--inputs", inputs);
    for (const auto& e : dovetail_enumerate(program, first, last, natural_flag("--budget", budget))) {
      out << "input=" << e.input << " steps=" << e.steps << '\n';
    }
    return kOk;
  }

  int waiting_approx() {
    const Program program = Program::load(prog);
    const Precision n = precision_flag("--prec", prec);
    const Crn w = waiting_crn(program, natural_flag("--input", input), TargetSequence::parse(targets));
    out << format_approx(w.approx(n), n) << '\n';
    return kOk;
  }

  int reduce() {
    const Program program = Program::load(prog);
    const auto result = halting_reduction(program, natural_flag("--input", input),
                                         TargetSequence::parse(targets), DiscreteMap::parse(probe),
                                         precision_flag("--prec", prec));
    out << describe(result.verdict) << '\n';
    out << "probe " << result.probe_point << " label=" << result.probe_label << '\n';
    return kOk;
  }

  int bisect() {
    const auto f = DiscreteMap::parse(oracle);
    const auto n = natural_flag("--steps", steps);
    if (n > 1'000'000) bad_flag("--steps", steps, "a step count <= 1000000");
    const auto result =
        bisect_to_precision(f, rational_flag("--lo", lo), rational_flag("--hi", hi), n);
    const auto& last_row = result.transcript.back();
    out << "p=" << last_row.p << '\n';
    out << "q=" << last_row.q << '\n';
    out << "width=" << (last_row.q - last_row.p) << '\n';
    if (!transcript.empty()) {
      std::ofstream file(transcript);
      if (!file) throw InvalidArgument("--transcript: cannot write '" + transcript + "'");
      write_transcript(file, result.transcript);
    }
    return kOk;
  }

  int cover_lebesgue() {
    const Rational value = lebesgue_number(load_cover(cover));
    out << "lebesgue=" << value << '\n';
    return kOk;
  }

  NiceModulus parse_modulus(const CoverList& list) const {
    if (modulus == "lebesgue") return NiceModulus::lebesgue(list);
    if (modulus.starts_with("const:")) return NiceModulus::constant(rational_flag("--modulus", modulus.substr(6)));
    bad_flag("--modulus", modulus, "lebesgue or const:<rational>");
  }

  int cover_subcover() {
    const CoverList list = load_cover(cover);
    const auto sample_points =
        samples.empty() ? default_constancy_samples() : rational_list_flag("--samples", samples);
    const auto certificate = extract_finite_subcover(list, parse_modulus(list), sample_points);
    if (out_path.empty()) {
      write_certificate(out, certificate);
    } else {
      std::ofstream file(out_path);
      if (!file) throw InvalidArgument("--out: cannot write '" + out_path + "'");
      write_certificate(file, certificate);
    }
    return kOk;
  }

  int cover_verify() {
    const auto result = verify_subcover(load_cover(cover), index_list_flag("--selected", selected));
    if (const auto* gap = std::get_if<Uncovered>(&result)) {
      out << "uncovered " << gap->x << '\n';
      return kDomainError;
    }
    out << "covered\n";
    return kOk;
  }

  int cover_verify_cert() {
    std::ifstream file(cert);
    if (!file) throw InvalidArgument("--cert: cannot open '" + cert + "'");
    std::stringstream text;
    text << file.rdbuf();
    const auto check = verify_certificate(load_cover(cover), parse_certificate(text.str()));
    if (!check.valid) {
      out << "invalid: " << check.reason << '\n';
      return kDomainError;
    }
    out << "covered\n";
    return kOk;
  }
};

void build(CLI::App& app, Commands& c) {
  app.require_subcommand(1);

  auto bind = [&c](CLI::App* sub, int (Commands::*fn)()) {
    sub->callback([&c, fn] { c.action = [&c, fn] { return (c.*fn)(); }; });
  };

  auto* rat = app.add_subcommand("rat", "evaluate an exact rational expression (+ - * parentheses)");
  rat->add_option("expr", c.expr, "expression")->required();
  rat->add_option("--cmp", c.cmp, "compare against another expression");
  bind(rat, &Commands::rat);

  auto* crn = app.add_subcommand("crn", "constructive real numbers");
  crn->require_subcommand(1);
  auto* approx = crn->add_subcommand("approx", "approximate a CRN expression to within 2^-prec");
  approx->add_option("--expr", c.expr, "expression; built-ins waiting(FILE,N) and bisect_limit(ORACLE,LO,HI)")
      ->required();
  approx->add_option("--prec", c.prec, "precision level")->required();
  bind(approx, &Commands::crn_approx);

  auto* machine = app.add_subcommand("machine", "counter-machine interpreter");
  machine->require_subcommand(1);
  auto* run = machine->add_subcommand("run", "run a program for at most BUDGET steps");
  run->add_option("--prog", c.prog, "program file")->required();
  run->add_option("--input", c.input, "input placed in register 0")->required();
  run->add_option("--budget", c.budget, "step budget")->required();
  bind(run, &Commands::machine_run);
  auto* dovetail = machine->add_subcommand("dovetail", "enumerate halting inputs by dovetailing");
  dovetail->add_option("--prog", c.prog, "program file")->required();
  dovetail->add_option("--inputs", c.inputs, "inclusive input range A..B")->required();
  dovetail->add_option("--budget", c.budget, "total step budget")->required();
  bind(dovetail, &Commands::machine_dovetail);

  auto* waiting = app.add_subcommand("waiting", "waiting-sequence CRN");
  waiting->require_subcommand(1);
  auto* wapprox = waiting->add_subcommand("approx", "approximate the waiting CRN of PROG on INPUT");
  wapprox->add_option("--prog", c.prog, "program file")->required();
  wapprox->add_option("--input", c.input, "program input")->required();
  wapprox->add_option("--targets", c.targets, "target sequence (geometric)");
  wapprox->add_option("--prec", c.prec, "precision level")->required();
  bind(wapprox, &Commands::waiting_approx);

  auto* reduce = app.add_subcommand("reduce", "step-certified halting reduction at finite precision");
  reduce->add_option("--prog", c.prog, "program file")->required();
  reduce->add_option("--input", c.input, "program input")->required();
  reduce->add_option("--prec", c.prec, "probe precision level")->required();
  reduce->add_option("--targets", c.targets, "target sequence (geometric)");
  reduce->add_option("--probe", c.probe, "discrete probe map (step@c, stair:..., const:k)");
  bind(reduce, &Commands::reduce);

  auto* bisect = app.add_subcommand("bisect", "bisect towards a label change of a discrete map");
  bisect->add_option("--oracle", c.oracle, "step@c, stair:c1,...,cm or const:k")->required();
  bisect->add_option("--lo", c.lo, "left endpoint")->required();
  bisect->add_option("--hi", c.hi, "right endpoint")->required();
  bisect->add_option("--steps", c.steps, "number of halvings")->required();
  bisect->add_option("--transcript", c.transcript, "write a TSV transcript here");
  bind(bisect, &Commands::bisect);

  auto* cover = app.add_subcommand("cover", "finite open covers of [0,1]");
  cover->require_subcommand(1);
  auto* leb = cover->add_subcommand("lebesgue", "exact Lebesgue number of a cover");
  leb->add_option("--cover", c.cover, "cover file")->required();
  bind(leb, &Commands::cover_lebesgue);
  auto* sub = cover->add_subcommand("subcover", "extract a finite subcover certificate");
  sub->add_option("--cover", c.cover, "cover file")->required();
  sub->add_option("--modulus", c.modulus, "lebesgue or const:<r>");
  sub->add_option("--samples", c.samples, "comma-separated constancy sample points in [0,1]");
  sub->add_option("--out", c.out_path, "write the certificate here instead of stdout");
  bind(sub, &Commands::cover_subcover);
  auto* verify = cover->add_subcommand("verify", "check that selected elements cover [0,1]");
  verify->add_option("--cover", c.cover, "cover file")->required();
  verify->add_option("--selected", c.selected, "comma-separated element indices")->required();
  bind(verify, &Commands::cover_verify);
  auto* vcert = cover->add_subcommand("verify-cert", "re-check a subcover certificate");
  vcert->add_option("--cover", c.cover, "cover file")->required();
  vcert->add_option("--cert", c.cert, "certificate file")->required();
  bind(vcert, &Commands::cover_verify_cert);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Constructive reals, computability sandbox and finite subcovers of [0,1]", "creal");
  Commands commands{out, {}};
  build(app, commands);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    return commands.action ? commands.action() : kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace cr::cli
