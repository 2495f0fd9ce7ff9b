#include <doctest.h>

#include <sstream>

#include "creal/analysis.hpp"
#include "oracles.hpp"

using namespace cr;

namespace {

Rational geometric_at(Index i) { return Rational(1) - Rational::pow2(-static_cast<std::int64_t>(i)); }

}  // namespace

TEST_CASE("discrete maps") {
  const auto step = DiscreteMap::parse("step@1/3");
  CHECK(step(Rational(0)) == 0);
  CHECK(step(Rational(1, 3)) == 1);
  CHECK(step(Rational(1)) == 1);
  const auto stair = DiscreteMap::parse("stair:1/4,3/4");
  CHECK(stair(Rational(0)) == 0);
  CHECK(stair(Rational(1, 2)) == 1);
  CHECK(stair(Rational(3, 4)) == 2);
  CHECK(DiscreteMap::parse("const:3")(Rational(5)) == 3);
  CHECK(stair.str() == "stair:1/4,3/4");
  CHECK_THROWS_AS(DiscreteMap::parse("sine"), ParseError);
  CHECK_THROWS_AS(DiscreteMap::parse("step@x"), ParseError);
  CHECK_THROWS_AS(DiscreteMap::parse("stair:1/4,"), ParseError);
}

TEST_CASE("waiting_crn tracks targets until the program halts") {
  const auto targets = TargetSequence::geometric();
  const Crn looping = waiting_crn(Program::parse(oracle::kLooper), 0, targets);
  CHECK(looping.alpha()(10) == geometric_at(10));

  const Crn halting = waiting_crn(Program::parse(oracle::kCountdown), 2, targets);
  CHECK(halting.alpha()(20) == geometric_at(8));
  CHECK(halting.alpha()(5) == geometric_at(5));
  CHECK(halting.alpha()(8) == geometric_at(8));
  CHECK(halting.alpha()(7) == geometric_at(7));
}

TEST_CASE("waiting dichotomy against run_for") {
  const char* programs[] = {oracle::kCountdown, oracle::kLooper, "HALT\n",
                            "L: JZ 0 even\nDEC 0\nJZ 0 odd\nDEC 0\nGOTO L\neven: HALT\nodd: GOTO odd\n"};
  const auto targets = TargetSequence::geometric();
  for (const char* text : programs) {
    const Program p = Program::parse(text);
    for (std::uint64_t input = 0; input < 6; ++input) {
      const Crn w = waiting_crn(p, input, targets);
      for (Index i = 0; i <= 40; ++i) {
        const RunOutcome run = run_for(p, input, i);
        const Index expected_index = std::holds_alternative<Halted>(run) ? std::get<Halted>(run).steps : i;
        CHECK(w.alpha()(i) == geometric_at(expected_index));
      }
      CHECK(validate_regulator(w, level_range(1, 16), 4).ok());
    }
  }
}

TEST_CASE("waiting_crn rejects bad targets and enforces its budget") {
  const TargetSequence bad(Crn(Approximator([](Index i) { return Rational(static_cast<long>(i % 2)); }),
                               Regulator::constant(0)));
  CHECK_THROWS_AS(waiting_crn(Program::parse("HALT"), 0, bad), InvalidArgument);

  const Crn w = waiting_crn(Program::parse(oracle::kLooper), 0, TargetSequence::geometric(), {100});
  CHECK(w.alpha()(100) == geometric_at(100));
  CHECK_THROWS_AS(w.alpha()(101), BudgetExceeded);
  CHECK_THROWS_AS(w.approx(100), BudgetExceeded);
  const Crn starved = waiting_crn(Program::parse(oracle::kLooper), 0, TargetSequence::geometric(), {0});
  CHECK_THROWS_AS(starved * starved, BudgetExceeded);
}

TEST_CASE("halting_reduction verdicts are step-certified") {
  const auto targets = TargetSequence::geometric();
  const auto probe = DiscreteMap::step(Rational(1, 2));
  const Program countdown = Program::parse(oracle::kCountdown);

  const auto halts = halting_reduction(countdown, 2, targets, probe, 20);
  CHECK(halts.verdict == HaltVerdict{HaltsAt{8}});
  CHECK(halts.probe_point == geometric_at(8));
  CHECK(halts.probe_label == 1);

  const auto loops = halting_reduction(Program::parse(oracle::kLooper), 0, targets, probe, 10);
  CHECK(loops.verdict == HaltVerdict{NoHaltWithin{11}});
  CHECK(loops.probe_point == geometric_at(11));

  REQUIRE(oracle::countdown_steps(16) == 50);
  const auto late = halting_reduction(countdown, 16, targets, probe, 5);
  CHECK(late.verdict == HaltVerdict{NoHaltWithin{6}});
  CHECK(describe(late.verdict) == "no-halt-within steps=6");

  for (std::uint64_t input = 0; input < 12; ++input) {
    for (Precision prec : {0u, 3u, 10u, 30u}) {
      const auto result = halting_reduction(countdown, input, targets, probe, prec);
      if (const auto* h = std::get_if<HaltsAt>(&result.verdict)) {
        CHECK(run_for(countdown, input, h->steps) == RunOutcome{Halted{h->steps}});
      } else {
        CHECK(oracle::countdown_steps(input) > prec + 1);
      }
    }
  }
}

TEST_CASE("bisect_step follows the recurrence") {
  const auto f = DiscreteMap::step(Rational(1, 3));
  CHECK(bisect_step({0, 1}, f) == Interval{0, Rational(1, 2)});
  CHECK(bisect_step({0, Rational(1, 2)}, f) == Interval{Rational(1, 4), Rational(1, 2)});
  CHECK(bisect_step({Rational(1, 4), Rational(1, 2)}, f) == Interval{Rational(1, 4), Rational(3, 8)});
  CHECK_THROWS_AS(bisect_step({Rational(1, 2), 1}, f), NotSeparated);

  // mid differs from both endpoints: the upper half wins
  CHECK(bisect_step({0, 1}, DiscreteMap::parse("stair:1/4,3/4")) == Interval{Rational(1, 2), 1});
}

TEST_CASE("bisect_to_precision") {
  const auto f = DiscreteMap::step(Rational(1, 3));
  const auto result = bisect_to_precision(f, 0, 1, 40);
  REQUIRE(result.transcript.size() == 41);
  const auto& last = result.transcript.back();
  CHECK(last.q - last.p == Rational::pow2(-40));
  CHECK(abs(last.p - Rational(1, 3)) < Rational::pow2(-40));
  CHECK(abs(last.q - Rational(1, 3)) < Rational::pow2(-40));

  for (std::size_t i = 0; i < result.transcript.size(); ++i) {
    const auto& row = result.transcript[i];
    CHECK(f(row.p) != f(row.q));
    CHECK(row.q - row.p == Rational::pow2(-static_cast<std::int64_t>(i)));
    if (i > 0) {
      const auto& prev = result.transcript[i - 1];
      CHECK(prev.p <= row.p);
      CHECK(row.q <= prev.q);
    }
  }

  // alpha follows the transcript and continues past it
  for (Index i = 0; i <= 40; ++i) CHECK(result.limit.alpha()(i) == result.transcript[i].p);
  const auto longer = bisect_to_precision(f, 0, 1, 70);
  for (Index i = 41; i <= 70; ++i) CHECK(result.limit.alpha()(i) == longer.transcript[i].p);

  CHECK(result.limit.beta()(0) == 1);
  CHECK(result.limit.beta()(10) == 11);
  CHECK(abs(result.limit.approx(20) - Rational(1, 3)) < Rational::pow2(-20));
  CHECK(validate_regulator(result.limit, level_range(1, 32), 4).ok());

  const auto stair = bisect_to_precision(DiscreteMap::parse("stair:1/4,3/4"), 0, 1, 30);
  CHECK(stair.transcript[1].p == Rational(1, 2));
  CHECK(stair.transcript[1].branch == Branch::Upper);
  CHECK(abs(stair.transcript.back().p - Rational(3, 4)) <= Rational::pow2(-30));

  // wide starting intervals need a later regulator
  const auto wide = bisect_to_precision(f, Rational(-3), Rational(5), 3);
  CHECK(wide.limit.beta()(0) == 4);
  CHECK(validate_regulator(wide.limit, level_range(1, 32), 4).ok());

  CHECK_THROWS_AS(bisect_to_precision(f, 1, 0, 3), InvalidArgument);
  CHECK_THROWS_AS(bisect_to_precision(f, Rational(1, 2), 1, 3), NotSeparated);
}

TEST_CASE("transcript file format") {
  const auto result = bisect_to_precision(DiscreteMap::step(Rational(1, 3)), 0, 1, 2);
  std::ostringstream out;
  write_transcript(out, result.transcript);
  CHECK(out.str() == "0\t0/1\t1/1\tinit\n1\t0/1\t1/2\tlower\n2\t1/4\t1/2\tupper\n");
}

TEST_CASE("constancy_check") {
  const auto step = DiscreteMap::step(Rational(1, 3));
  CHECK(std::get<Witness>(constancy_check(step, 0, 1, 5)) == Witness{Rational(1, 4), Rational(1, 2)});
  CHECK(std::holds_alternative<NoWitness>(constancy_check(DiscreteMap::constant(4), 0, 1, 100)));
  CHECK(std::holds_alternative<NoWitness>(constancy_check(step, 0, Rational(1, 4), 50)));
  CHECK_THROWS_AS(constancy_check(step, 1, 0, 5), InvalidArgument);
  CHECK_THROWS_AS(constancy_check(step, 0, 1, 1), InvalidArgument);
}
