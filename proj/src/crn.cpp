#include "creal/crn.hpp"

#include <algorithm>

#include "creal/errors.hpp"

namespace cr {

Approximator Approximator::constant(Rational value) {
  return Approximator([value = std::move(value)](Index) { return value; });
}

Regulator Regulator::constant(Index index) {
  return Regulator([index](Precision) { return index; });
}

Regulator Regulator::shifted(Index offset) {
  return Regulator([offset](Precision n) { return static_cast<Index>(n) + offset; });
}

Crn Crn::from_rational(Rational value) {
  return Crn(Approximator::constant(std::move(value)), Regulator::constant(0));
}

Rational Crn::approx(Precision n) const { return alpha_(beta_(n + 1)); }

namespace {

// Both operands at level n + 1: gaps add up to at most 2^-(n+1) + 2^-(n+1).
Regulator sum_regulator(const Crn& x, const Crn& y) {
  return Regulator([bx = x.beta(), by = y.beta()](Precision n) {
    return std::max(bx(n + 1), by(n + 1));
  });
}

// Smallest k with 2^k >= bound.
Precision log2_ceiling(const Rational& bound) {
  Precision k = 0;
  while (Rational::pow2(k) < bound) ++k;
  return k;
}

}  // namespace

Crn operator+(const Crn& x, const Crn& y) {
  Approximator alpha([ax = x.alpha(), ay = y.alpha()](Index i) { return ax(i) + ay(i); });
  return Crn(std::move(alpha), sum_regulator(x, y));
}

Crn operator-(const Crn& x, const Crn& y) {
  Approximator alpha([ax = x.alpha(), ay = y.alpha()](Index i) { return ax(i) - ay(i); });
  return Crn(std::move(alpha), sum_regulator(x, y));
}

Crn operator-(const Crn& x) {
  return Crn(Approximator([ax = x.alpha()](Index i) { return -ax(i); }), x.beta());
}

Crn operator*(const Crn& x, const Crn& y) {
  // |x_i y_i - x_j y_j| <= |x_i||y_i - y_j| + |y_j||x_i - x_j| < (B_x + B_y) 2^-(n+k)
  const Rational bound_x = abs(x.approx(0)) + 1;
  const Rational bound_y = abs(y.approx(0)) + 1;
  const Precision shift = log2_ceiling(bound_x + bound_y + 1);
  Approximator alpha([ax = x.alpha(), ay = y.alpha()](Index i) { return ax(i) * ay(i); });
  Regulator beta([bx = x.beta(), by = y.beta(), shift](Precision n) {
    return std::max(bx(n + shift), by(n + shift));
  });
  return Crn(std::move(alpha), std::move(beta));
}

Apartness compare_apart(const Crn& x, const Crn& y, Precision n) {
  const Rational a = x.approx(n + 2);
  const Rational b = y.approx(n + 2);
  const Rational threshold = Rational::pow2(-static_cast<std::int64_t>(n) - 1);
  if (b - a > threshold) return Apartness::Less;
  if (a - b > threshold) return Apartness::Greater;
  return Apartness::Indistinguishable;
}

const char* to_string(Apartness apartness) {
  switch (apartness) {
    case Apartness::Less: return "less";
    case Apartness::Greater: return "greater";
    case Apartness::Indistinguishable: return "indistinguishable";
  }
  return "?";
}

std::vector<Index> probe_schedule(Index start, std::size_t count) {
  std::vector<Index> probes;
  probes.reserve(count);
  Index offset = 0;
  while (probes.size() < count) {
    probes.push_back(start + offset);
    offset = offset == 0 ? 1 : offset * 2;
  }
  return probes;
}

ValidationReport validate_regulator(const Crn& x, const std::vector<Precision>& levels,
                                    std::size_t probes_per_level) {
  if (probes_per_level < 2) throw InvalidArgument("validate_regulator needs at least 2 probes per level");
  ValidationReport report;
  for (Precision n : levels) {
    const Rational bound = Rational::pow2(-static_cast<std::int64_t>(n));
    const auto probes = probe_schedule(x.beta()(n), probes_per_level);
    std::vector<Rational> values;
    values.reserve(probes.size());
    for (Index i : probes) values.push_back(x.alpha()(i));
    for (std::size_t a = 0; a < probes.size(); ++a) {
      for (std::size_t b = a + 1; b < probes.size(); ++b) {
        ++report.pairs_checked;
        Rational gap = abs(values[a] - values[b]);
        if (gap >= bound) report.violations.push_back({n, probes[a], probes[b], std::move(gap)});
      }
    }
  }
  return report;
}

std::vector<Precision> level_range(Precision lo, Precision hi) {
  std::vector<Precision> levels;
  for (Precision n = lo; n <= hi; ++n) levels.push_back(n);
  return levels;
}

std::string format_approx(const Rational& value, Precision n) {
  return value.str() + " ± 2^-" + std::to_string(n);
}

}  // namespace cr
