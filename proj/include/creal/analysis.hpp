#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "creal/crn.hpp"
#include "creal/errors.hpp"
#include "creal/expression.hpp"
#include "creal/machine.hpp"
#include "creal/rational.hpp"

namespace cr {

/// Convergent sequence x_i -> x supplying the values a waiting sequence tracks.
class TargetSequence {
 public:
  explicit TargetSequence(Crn sequence) : sequence_(std::move(sequence)) {}

  /// x_i = 1 - 2^-i with beta(n) = n.
  static TargetSequence geometric();
  /// Accepts "geometric".
  static TargetSequence parse(std::string_view name);

  const Crn& crn() const { return sequence_; }
  Rational at(Index i) const { return sequence_.alpha()(i); }
  Index regulator(Precision n) const { return sequence_.beta()(n); }

 private:
  Crn sequence_;
};

using Label = int;

/// Total, deterministic map from rationals to a small label alphabet.
///   step@c         0 below c, 1 at and above c
///   stair:c1,...   number of thresholds <= t
///   const:k        k everywhere
class DiscreteMap {
 public:
  static DiscreteMap step(Rational threshold);
  static DiscreteMap stair(std::vector<Rational> thresholds);
  static DiscreteMap constant(Label label);
  /// Throws ParseError.
  static DiscreteMap parse(std::string_view text);

  Label operator()(const Rational& t) const;
  std::string str() const;

 private:
  enum class Kind { Step, Stair, Constant };
  DiscreteMap(Kind kind, std::vector<Rational> thresholds, Label label)
      : kind_(kind), thresholds_(std::move(thresholds)), label_(label) {}

  Kind kind_;
  std::vector<Rational> thresholds_;
  Label label_ = 0;
};

struct WaitingOptions {
  /// Largest index (= interpreter steps) a single evaluation may request.
  Steps max_steps = 10'000'000;
};

/// Entry i is x_i while A(n) is still running after i steps and x_k forever
/// once it has halted at step k. The regulator is the targets' regulator.
/// Throws InvalidArgument if the targets fail regulator validation on
/// levels 1..16; evaluation beyond max_steps throws BudgetExceeded.
Crn waiting_crn(const Program& program, std::uint64_t input, const TargetSequence& targets,
                WaitingOptions options = {});

struct HaltsAt {
  Steps steps;
  friend bool operator==(const HaltsAt&, const HaltsAt&) = default;
};
struct NoHaltWithin {
  Steps steps;
  friend bool operator==(const NoHaltWithin&, const NoHaltWithin&) = default;
};
using HaltVerdict = std::variant<HaltsAt, NoHaltWithin>;

struct ReductionResult {
  HaltVerdict verdict;
  Rational probe_point;
  Label probe_label;
};

/// Runs the halting reduction at finite precision: queries the waiting CRN
/// at `precision`, which forces A(n) for s = beta(precision + 1) steps. The
/// verdict is backed by that run, never guessed.
ReductionResult halting_reduction(const Program& program, std::uint64_t input,
                                 const TargetSequence& targets, const DiscreteMap& probe,
                                 Precision precision);

std::string describe(const HaltVerdict& verdict);

/// f(p) == f(q) where a separated pair was required.
class NotSeparated : public DomainError {
 public:
  NotSeparated(Rational p, Rational q, Label label);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }

 private:
  Rational p_;
  Rational q_;
};

enum class Branch { Initial, Upper, Lower };
const char* to_string(Branch branch);

struct BisectionRow {
  Rational p;
  Rational q;
  Branch branch;
};

using BisectionTranscript = std::vector<BisectionRow>;

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One halving: (mid, q) when f(mid) != f(q), otherwise (p, mid). When f(mid)
/// differs from both endpoints the upper half wins.
Interval bisect_step(const Interval& pair, const DiscreteMap& f);
Branch bisect_branch(const Interval& pair, const DiscreteMap& f);

struct BisectionResult {
  Crn limit;
  BisectionTranscript transcript;
};

/// Runs `steps` halvings from (p0, q0). The limit CRN has alpha(i) = p_i,
/// continuing the bisection on demand past the transcript, and
/// beta(m) = least i with (q0 - p0) 2^-i < 2^-m.
BisectionResult bisect_to_precision(const DiscreteMap& f, const Rational& p0, const Rational& q0,
                                    std::size_t steps);

/// Tab-separated `i p_i q_i branch` rows.
void write_transcript(std::ostream& out, const BisectionTranscript& transcript);

struct NoWitness {};
struct Witness {
  Rational p;
  Rational q;
  friend bool operator==(const Witness&, const Witness&) = default;
};
using ConstancyResult = std::variant<NoWitness, Witness>;

/// First adjacent pair on the grid lo + i (hi - lo) / (samples - 1) with
/// differing labels.
ConstancyResult constancy_check(const DiscreteMap& f, const Rational& lo, const Rational& hi,
                                std::size_t samples);

/// `waiting(FILE, N[, targets])` and `bisect_limit(ORACLE, LO, HI)` for CRN
/// expressions. Programs are loaded relative to the working directory.
void register_analysis_builtins(BuiltinRegistry& registry);

}  // namespace cr
