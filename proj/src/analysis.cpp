#include "creal/analysis.hpp"

#include <memory>
#include <ostream>

namespace cr {

TargetSequence TargetSequence::geometric() {
  Approximator alpha([](Index i) {
    return Rational(1) - Rational::pow2(-static_cast<std::int64_t>(i));
  });
  return TargetSequence(Crn(std::move(alpha), Regulator::shifted(0)));
}

TargetSequence TargetSequence::parse(std::string_view name) {
  if (name == "geometric") return geometric();
  throw ParseError("unknown target sequence '" + std::string(name) + "' (expected: geometric)");
}

DiscreteMap DiscreteMap::step(Rational threshold) {
  return DiscreteMap(Kind::Step, {std::move(threshold)}, 0);
}

DiscreteMap DiscreteMap::stair(std::vector<Rational> thresholds) {
  return DiscreteMap(Kind::Stair, std::move(thresholds), 0);
}

DiscreteMap DiscreteMap::constant(Label label) { return DiscreteMap(Kind::Constant, {}, label); }

DiscreteMap DiscreteMap::parse(std::string_view text) {
  const std::string original(text);
  if (text.starts_with("step@")) return step(Rational::parse(text.substr(5)));
  if (text.starts_with("stair:")) {
    text.remove_prefix(6);
    std::vector<Rational> thresholds;
    while (true) {
      const auto comma = text.find(',');
      thresholds.push_back(Rational::parse(text.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return stair(std::move(thresholds));
  }
  if (text.starts_with("const:")) {
    const std::string_view body = text.substr(6);
    const bool negative = body.starts_with('-');
    const auto magnitude = parse_natural(negative ? body.substr(1) : body);
    if (magnitude > 1'000'000) throw ParseError("label out of range in '" + original + "'");
    const auto label = static_cast<Label>(magnitude);
    return constant(negative ? -label : label);
  }
  throw ParseError("unknown oracle '" + original + "' (expected step@c, stair:c1,...,cm or const:k)");
}

Label DiscreteMap::operator()(const Rational& t) const {
  switch (kind_) {
    case Kind::Step:
      return t < thresholds_.front() ? 0 : 1;
    case Kind::Stair: {
      Label count = 0;
      for (const auto& c : thresholds_) {
        if (c <= t) ++count;
      }
      return count;
    }
    case Kind::Constant:
      return label_;
  }
  return 0;
}

std::string DiscreteMap::str() const {
  switch (kind_) {
    case Kind::Step:
      return "step@" + thresholds_.front().str();
    case Kind::Stair: {
      std::string out = "stair:";
      for (std::size_t i = 0; i < thresholds_.size(); ++i) {
        if (i) out += ',';
        out += thresholds_[i].str();
      }
      return out;
    }
    case Kind::Constant:
      return "const:" + std::to_string(label_);
  }
  return {};
}

Crn waiting_crn(const Program& program, std::uint64_t input, const TargetSequence& targets,
                WaitingOptions options) {
  if (!validate_regulator(targets.crn(), level_range(1, 16), 4).ok()) {
    throw InvalidArgument("target sequence violates its regulator on levels 1..16");
  }
  auto shared = std::make_shared<const Program>(program);
  Approximator alpha([shared, input, xs = targets.crn().alpha(), options](Index i) {
    if (i > options.max_steps) {
      throw BudgetExceeded("waiting sequence index " + std::to_string(i) + " exceeds step budget " +
                           std::to_string(options.max_steps));
    }
    const RunOutcome outcome = run_for(*shared, input, i);
    if (const auto* h = std::get_if<Halted>(&outcome)) return xs(h->steps);
    return xs(i);
  });
  return Crn(std::move(alpha), targets.crn().beta());
}

ReductionResult halting_reduction(const Program& program, std::uint64_t input,
                                 const TargetSequence& targets, const DiscreteMap& probe,
                                 Precision precision) {
  const Crn waiting = waiting_crn(program, input, targets);
  Rational point = waiting.approx(precision);
  const Label label = probe(point);
  // The approximation above ran A(n) for exactly this many steps.
  const Steps probed = targets.regulator(precision + 1);
  const RunOutcome outcome = run_for(program, input, probed);
  HaltVerdict verdict = NoHaltWithin{probed};
  if (const auto* h = std::get_if<Halted>(&outcome)) verdict = HaltsAt{h->steps};
  return {verdict, std::move(point), label};
}

std::string describe(const HaltVerdict& verdict) {
  if (const auto* h = std::get_if<HaltsAt>(&verdict)) return "halts steps=" + std::to_string(h->steps);
  return "no-halt-within steps=" + std::to_string(std::get<NoHaltWithin>(verdict).steps);
}

NotSeparated::NotSeparated(Rational p, Rational q, Label label)
    : DomainError("not separated: f(" + p.str() + ") = f(" + q.str() + ") = " + std::to_string(label)),
      p_(std::move(p)),
      q_(std::move(q)) {}

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Initial: return "init";
    case Branch::Upper: return "upper";
    case Branch::Lower: return "lower";
  }
  return "?";
}

namespace {

Rational midpoint(const Interval& pair) { return (pair.lo + pair.hi) * Rational(1, 2); }

void require_separated(const Interval& pair, const DiscreteMap& f) {
  const Label at_lo = f(pair.lo);
  if (at_lo == f(pair.hi)) throw NotSeparated(pair.lo, pair.hi, at_lo);
}

Interval apply(const Interval& pair, Branch branch) {
  Rational mid = midpoint(pair);
  if (branch == Branch::Upper) return {std::move(mid), pair.hi};
  return {pair.lo, std::move(mid)};
}

}  // namespace

Branch bisect_branch(const Interval& pair, const DiscreteMap& f) {
  require_separated(pair, f);
  return f(midpoint(pair)) != f(pair.hi) ? Branch::Upper : Branch::Lower;
}

Interval bisect_step(const Interval& pair, const DiscreteMap& f) {
  return apply(pair, bisect_branch(pair, f));
}

BisectionResult bisect_to_precision(const DiscreteMap& f, const Rational& p0, const Rational& q0,
                                    std::size_t steps) {
  if (!(p0 < q0)) throw InvalidArgument("bisection needs p0 < q0");
  Interval pair{p0, q0};
  require_separated(pair, f);

  auto transcript = std::make_shared<BisectionTranscript>();
  transcript->reserve(steps + 1);
  transcript->push_back({p0, q0, Branch::Initial});
  for (std::size_t i = 0; i < steps; ++i) {
    const Branch branch = bisect_branch(pair, f);
    pair = apply(pair, branch);
    transcript->push_back({pair.lo, pair.hi, branch});
  }

  std::shared_ptr<const BisectionTranscript> rows = transcript;
  Approximator alpha([rows, f](Index i) {
    if (i < rows->size()) return (*rows)[i].p;
    Interval extended{rows->back().p, rows->back().q};
    for (Index k = rows->size() - 1; k < i; ++k) extended = bisect_step(extended, f);
    return extended.lo;
  });
  Regulator beta([width = q0 - p0](Precision m) {
    // least i with width * 2^m < 2^i
    const Rational scaled = width * Rational::pow2(m);
    Index i = 0;
    while (Rational::pow2(static_cast<std::int64_t>(i)) <= scaled) ++i;
    return i;
  });
  return {Crn(std::move(alpha), std::move(beta)), *transcript};
}

void write_transcript(std::ostream& out, const BisectionTranscript& transcript) {
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    const auto& row = transcript[i];
    out << i << '\t' << row.p << '\t' << row.q << '\t' << to_string(row.branch) << '\n';
  }
}

ConstancyResult constancy_check(const DiscreteMap& f, const Rational& lo, const Rational& hi,
                                std::size_t samples) {
  if (!(lo < hi)) throw InvalidArgument("constancy_check needs lo < hi");
  if (samples < 2) throw InvalidArgument("constancy_check needs at least 2 samples");
  const Rational spacing = (hi - lo) / Rational(static_cast<long>(samples - 1));
  Rational prev = lo;
  Label prev_label = f(prev);
  for (std::size_t i = 1; i < samples; ++i) {
    Rational next = lo + spacing * Rational(static_cast<long>(i));
    const Label next_label = f(next);
    if (next_label != prev_label) return Witness{std::move(prev), std::move(next)};
    prev = std::move(next);
    prev_label = next_label;
  }
  return NoWitness{};
}

void register_analysis_builtins(BuiltinRegistry& registry) {
  registry["waiting"] = [](const std::vector<std::string>& args) {
    if (args.size() != 2 && args.size() != 3) {
      throw InvalidArgument("waiting(FILE, N[, targets]) takes 2 or 3 arguments");
    }
    const Program program = Program::load(args[0]);
    const TargetSequence targets =
        args.size() == 3 ? TargetSequence::parse(args[2]) : TargetSequence::geometric();
    return waiting_crn(program, parse_natural(args[1]), targets);
  };
  registry["bisect_limit"] = [](const std::vector<std::string>& args) {
    if (args.size() < 3) throw InvalidArgument("bisect_limit(ORACLE, LO, HI) takes 3 arguments");
    // The oracle may itself contain commas (stair:a,b,...).
    std::string oracle = args[0];
    for (std::size_t i = 1; i + 2 < args.size(); ++i) oracle += "," + args[i];
    const auto f = DiscreteMap::parse(oracle);
    return bisect_to_precision(f, Rational::parse(args[args.size() - 2]),
                               Rational::parse(args.back()), 0)
        .limit;
  };
}

}  // namespace cr
