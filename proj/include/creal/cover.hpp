#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "creal/errors.hpp"
#include "creal/rational.hpp"

namespace cr {

/// Open interval (a, b) of the real line, a < b.
class OpenInterval {
 public:
  /// Throws InvalidArgument unless a < b.
  OpenInterval(Rational a, Rational b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool contains(const Rational& x) const { return a_ < x && x < b_; }
  /// (center - r, center + r) is a subset of (a, b).
  bool contains_ball(const Rational& center, const Rational& r) const {
    return a_ <= center - r && center + r <= b_;
  }

  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;

 private:
  Rational a_;
  Rational b_;
};

using CoverList = std::vector<OpenInterval>;

/// One `a b` pair per line, `#` comments. Throws ParseError/InvalidArgument.
CoverList parse_cover(std::string_view text);
CoverList load_cover(const std::filesystem::path& path);

class NotACover : public DomainError {
 public:
  NotACover(Rational point, Rational depth);

  /// A point of [0,1] with no element holding a positive-radius ball around it.
  const Rational& point() const { return point_; }
  const Rational& depth() const { return depth_; }

 private:
  Rational point_;
  Rational depth_;
};

class NotNiceCover : public DomainError {
 public:
  NotNiceCover(Rational p, Rational q, Rational radius_p, Rational radius_q);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  const Rational& radius_p() const { return radius_p_; }
  const Rational& radius_q() const { return radius_q_; }

 private:
  Rational p_, q_, radius_p_, radius_q_;
};

class NonpositiveRadius : public DomainError {
 public:
  explicit NonpositiveRadius(const Rational& r);
};

class NoContainingElement : public DomainError {
 public:
  NoContainingElement(Rational center, Rational r);

  const Rational& center() const { return center_; }
  const Rational& radius() const { return radius_; }

 private:
  Rational center_;
  Rational radius_;
};

/// max_j min(x - a_j, b_j - x): the largest r for which some element holds
/// the r-ball around x (negative when x lies in no element).
Rational containment_depth(const CoverList& cover, const Rational& x);

struct LebesgueResult {
  Rational value;
  Rational argmin;  // a point of [0,1] where the depth equals value
};

/// Exact minimum of containment_depth over [0,1], found on the finite set of
/// breakpoints {0, 1} ∪ {a_j, b_j} ∪ {(a_j + b_k)/2} clipped to [0,1]. The
/// smallest minimizing candidate is reported. Throws NotACover if L <= 0.
LebesgueResult lebesgue_minimum(const CoverList& cover);
Rational lebesgue_number(const CoverList& cover);

/// Uniform containment radius for a cover: E(x) = r.
class NiceModulus {
 public:
  using Oracle = std::function<Rational(const Rational&)>;

  static NiceModulus constant(Rational r);
  static NiceModulus lebesgue(CoverList cover);
  /// Arbitrary, possibly non-constant procedure; for adversarial testing.
  static NiceModulus sampled(Oracle oracle);

  Rational operator()(const Rational& x) const;

 private:
  explicit NiceModulus(Oracle oracle) : oracle_(std::move(oracle)) {}
  Oracle oracle_;
};

/// Evaluates E at every sample; all values must agree and be positive.
Rational extract_constant_radius(const NiceModulus& modulus, const std::vector<Rational>& samples);

std::vector<Rational> default_constancy_samples();

/// {0, eps, 2 eps, ..., floor(1/eps) eps} with 1 appended when missing.
std::vector<Rational> build_eps_net(const Rational& eps);

/// Smallest index whose element contains the r-ball around center.
std::size_t find_containing_element(const CoverList& cover, const Rational& center, const Rational& r);

struct Assignment {
  std::size_t net_index;
  std::size_t element;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct SubcoverCertificate {
  Rational r;
  std::vector<Rational> net;
  std::vector<Assignment> assignments;
  std::vector<std::size_t> selected;  // sorted, deduplicated

  friend bool operator==(const SubcoverCertificate&, const SubcoverCertificate&) = default;
};

SubcoverCertificate extract_finite_subcover(const CoverList& cover, const NiceModulus& modulus,
                                            const std::vector<Rational>& samples = default_constancy_samples());

struct Covered {
  friend bool operator==(const Covered&, const Covered&) = default;
};
struct Uncovered {
  Rational x;
  friend bool operator==(const Uncovered&, const Uncovered&) = default;
};
using CoverageResult = std::variant<Covered, Uncovered>;

/// Exact sweep: either the union of the selected open intervals contains
/// [0,1], or the first point of [0,1] lying in none of them.
CoverageResult verify_subcover(const CoverList& cover, const std::vector<std::size_t>& selected);

/// Same sweep over an explicit list of intervals.
CoverageResult covers_unit_interval(const std::vector<OpenInterval>& intervals);

/// Certificate text:
///   r=<rational>
///   net <c> -> element <j>      (one per net point)
///   selected <j1,j2,...>
void write_certificate(std::ostream& out, const SubcoverCertificate& cert);
/// Throws ParseError.
SubcoverCertificate parse_certificate(std::string_view text);

struct CertificateCheck {
  bool valid = false;
  std::string reason;  // empty when valid
};

/// Independent re-check of every certificate claim against the cover: ball
/// containment per assignment, net density at radius r over [0,1],
/// `selected` matching the assignments, and coverage by the selected set.
CertificateCheck verify_certificate(const CoverList& cover, const SubcoverCertificate& cert);

}  // namespace cr
