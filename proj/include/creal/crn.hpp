#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "creal/rational.hpp"

namespace cr {

using Index = std::uint64_t;
/// Precision level n: an approximation at level n is within 2^-n.
using Precision = std::uint32_t;

/// The sequence half of a constructive real: index -> rational.
/// Must be deterministic and total; closures must only capture
/// immutable state so that concurrent evaluation is safe.
class Approximator {
 public:
  using Fn = std::function<Rational(Index)>;

  explicit Approximator(Fn fn) : fn_(std::move(fn)) {}

  static Approximator constant(Rational value);

  Rational operator()(Index i) const { return fn_(i); }

 private:
  Fn fn_;
};

/// The modulus half: precision level -> index from which all entries are
/// pairwise within 2^-n. Not assumed monotone anywhere in the library.
class Regulator {
 public:
  using Fn = std::function<Index(Precision)>;

  explicit Regulator(Fn fn) : fn_(std::move(fn)) {}

  static Regulator constant(Index index);
  /// beta(n) = n + offset.
  static Regulator shifted(Index offset);

  Index operator()(Precision n) const { return fn_(n); }

 private:
  Fn fn_;
};

/// Constructive real number: an approximation program alpha and a regulator
/// beta with |alpha(i) - alpha(j)| < 2^-n whenever i, j >= beta(n).
class Crn {
 public:
  Crn(Approximator alpha, Regulator beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {}

  static Crn from_rational(Rational value);

  const Approximator& alpha() const { return alpha_; }
  const Regulator& beta() const { return beta_; }

  /// alpha(beta(n + 1)), which lies within 2^-(n+1) of the limit.
  Rational approx(Precision n) const;

 private:
  Approximator alpha_;
  Regulator beta_;
};

inline Rational approx_to(const Crn& x, Precision n) { return x.approx(n); }

Crn operator+(const Crn& x, const Crn& y);
Crn operator-(const Crn& x, const Crn& y);
Crn operator-(const Crn& x);
/// Evaluates both magnitude bounds eagerly, so BudgetExceeded from a
/// machine-backed operand surfaces here.
Crn operator*(const Crn& x, const Crn& y);

enum class Apartness { Less, Greater, Indistinguishable };

/// Less/Greater are certified; Indistinguishable certifies |x - y| <= 2^-n.
Apartness compare_apart(const Crn& x, const Crn& y, Precision n);
const char* to_string(Apartness apartness);

struct RegulatorViolation {
  Precision level;
  Index i;
  Index j;
  Rational gap;

  friend bool operator==(const RegulatorViolation&, const RegulatorViolation&) = default;
};

struct ValidationReport {
  std::vector<RegulatorViolation> violations;
  std::size_t pairs_checked = 0;

  bool ok() const { return violations.empty(); }
};

/// Probe indices used for one level: beta(n) + {0, 1, 2, 4, 8, ...},
/// `count` entries in total.
std::vector<Index> probe_schedule(Index start, std::size_t count);

/// Samples the regulator law at each level on a deterministic probe schedule
/// and reports every pair whose gap is not strictly below 2^-n.
ValidationReport validate_regulator(const Crn& x, const std::vector<Precision>& levels,
                                    std::size_t probes_per_level);

/// Levels lo..hi inclusive.
std::vector<Precision> level_range(Precision lo, Precision hi);

/// `p/q ± 2^-n`
std::string format_approx(const Rational& value, Precision n);

}  // namespace cr
