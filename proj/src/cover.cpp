#include "creal/cover.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace cr {

OpenInterval::OpenInterval(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (!(a_ < b_)) throw InvalidArgument("open interval needs a < b, got (" + a_.str() + ", " + b_.str() + ")");
}

CoverList parse_cover(std::string_view text) {
  CoverList cover;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> fields;
    std::string word;
    while (words >> word) fields.push_back(word);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw ParseError("cover line " + std::to_string(line_no) + ": expected `a b`");
    }
    cover.emplace_back(Rational::parse(fields[0]), Rational::parse(fields[1]));
  }
  return cover;
}

CoverList load_cover(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open cover file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_cover(buffer.str());
}

NotACover::NotACover(Rational point, Rational depth)
    : DomainError("not a cover: no element holds a ball around " + point.str() +
                  " (depth " + depth.str() + ")"),
      point_(std::move(point)),
      depth_(std::move(depth)) {}

NotNiceCover::NotNiceCover(Rational p, Rational q, Rational radius_p, Rational radius_q)
    : DomainError("not a nice cover: E(" + p.str() + ") = " + radius_p.str() + " but E(" + q.str() +
                  ") = " + radius_q.str()),
      p_(std::move(p)),
      q_(std::move(q)),
      radius_p_(std::move(radius_p)),
      radius_q_(std::move(radius_q)) {}

NonpositiveRadius::NonpositiveRadius(const Rational& r)
    : DomainError("nonpositive radius " + r.str()) {}

NoContainingElement::NoContainingElement(Rational center, Rational r)
    : DomainError("no element contains the ball of radius " + r.str() + " around " + center.str()),
      center_(std::move(center)),
      radius_(std::move(r)) {}

Rational containment_depth(const CoverList& cover, const Rational& x) {
  std::optional<Rational> best;
  for (const auto& w : cover) {
    Rational depth = min(x - w.a(), w.b() - x);
    if (!best || *best < depth) best = std::move(depth);
  }
  if (!best) throw InvalidArgument("empty cover");
  return *best;
}

LebesgueResult lebesgue_minimum(const CoverList& cover) {
  if (cover.empty()) throw InvalidArgument("empty cover");
  const Rational zero(0);
  const Rational one(1);
  const Rational half(1, 2);
  std::set<Rational, std::less<>> candidates{zero, one};
  auto consider = [&](const Rational& x) {
    if (zero <= x && x <= one) candidates.insert(x);
  };
  for (const auto& w : cover) {
    consider(w.a());
    consider(w.b());
  }
  // Depth is piecewise linear with slopes ±1; a rising piece x - a_j meets a
  // falling piece b_k - x only at (a_j + b_k)/2.
  for (const auto& left : cover) {
    for (const auto& right : cover) consider((left.a() + right.b()) * half);
  }

  std::optional<LebesgueResult> best;
  for (const auto& x : candidates) {
    Rational depth = containment_depth(cover, x);
    if (!best || depth < best->value) best = LebesgueResult{std::move(depth), x};
  }
  if (best->value.sign() <= 0) throw NotACover(best->argmin, best->value);
  return *best;
}

Rational lebesgue_number(const CoverList& cover) { return lebesgue_minimum(cover).value; }

NiceModulus NiceModulus::constant(Rational r) {
  return NiceModulus([r = std::move(r)](const Rational&) { return r; });
}

NiceModulus NiceModulus::lebesgue(CoverList cover) {
  // Computed once; the value does not depend on the query point.
  return NiceModulus([r = lebesgue_number(cover)](const Rational&) { return r; });
}

NiceModulus NiceModulus::sampled(Oracle oracle) { return NiceModulus(std::move(oracle)); }

Rational NiceModulus::operator()(const Rational& x) const { return oracle_(x); }

Rational extract_constant_radius(const NiceModulus& modulus, const std::vector<Rational>& samples) {
  if (samples.empty()) throw InvalidArgument("no constancy samples");
  for (const auto& s : samples) {
    if (s.sign() < 0 || Rational(1) < s) throw InvalidArgument("sample " + s.str() + " outside [0,1]");
  }
  const Rational first = modulus(samples.front());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    Rational value = modulus(samples[i]);
    if (value != first) throw NotNiceCover(samples.front(), samples[i], first, std::move(value));
  }
  if (first.sign() <= 0) throw NonpositiveRadius(first);
  return first;
}

std::vector<Rational> default_constancy_samples() { return {Rational(0), Rational(1, 2), Rational(1)}; }

std::vector<Rational> build_eps_net(const Rational& eps) {
  if (eps.sign() <= 0) throw NonpositiveRadius(eps);
  const mpz_class count = floor(Rational(1) / eps);
  std::vector<Rational> net;
  net.reserve(count.get_ui() + 2);
  for (mpz_class k = 0; k <= count; ++k) net.push_back(Rational(k) * eps);
  if (net.back() != Rational(1)) net.emplace_back(1);
  return net;
}

std::size_t find_containing_element(const CoverList& cover, const Rational& center, const Rational& r) {
  if (r.sign() <= 0) throw NonpositiveRadius(r);
  for (std::size_t j = 0; j < cover.size(); ++j) {
    if (cover[j].contains_ball(center, r)) return j;
  }
  throw NoContainingElement(center, r);
}

SubcoverCertificate extract_finite_subcover(const CoverList& cover, const NiceModulus& modulus,
                                            const std::vector<Rational>& samples) {
  if (cover.empty()) throw InvalidArgument("empty cover");
  SubcoverCertificate cert;
  cert.r = extract_constant_radius(modulus, samples);
  cert.net = build_eps_net(cert.r);
  cert.assignments.reserve(cert.net.size());
  for (std::size_t i = 0; i < cert.net.size(); ++i) {
    cert.assignments.push_back({i, find_containing_element(cover, cert.net[i], cert.r)});
  }
  for (const auto& a : cert.assignments) cert.selected.push_back(a.element);
  std::sort(cert.selected.begin(), cert.selected.end());
  cert.selected.erase(std::unique(cert.selected.begin(), cert.selected.end()), cert.selected.end());
  return cert;
}

CoverageResult covers_unit_interval(const std::vector<OpenInterval>& intervals) {
  std::vector<const OpenInterval*> sorted;
  sorted.reserve(intervals.size());
  for (const auto& w : intervals) sorted.push_back(&w);
  std::sort(sorted.begin(), sorted.end(),
            [](const OpenInterval* x, const OpenInterval* y) { return x->a() < y->a(); });

  // Invariant: every point of [0, reach) is covered; reach itself is next.
  Rational reach(0);
  std::optional<Rational> furthest;  // max b over elements with a < reach
  std::size_t next = 0;
  const Rational one(1);
  while (reach <= one) {
    while (next < sorted.size() && sorted[next]->a() < reach) {
      if (!furthest || *furthest < sorted[next]->b()) furthest = sorted[next]->b();
      ++next;
    }
    if (!furthest || *furthest <= reach) return Uncovered{reach};
    reach = *furthest;
  }
  return Covered{};
}

CoverageResult verify_subcover(const CoverList& cover, const std::vector<std::size_t>& selected) {
  std::vector<OpenInterval> chosen;
  chosen.reserve(selected.size());
  for (std::size_t j : selected) {
    if (j >= cover.size()) throw InvalidArgument("element index " + std::to_string(j) + " out of range");
    chosen.push_back(cover[j]);
  }
  return covers_unit_interval(chosen);
}

void write_certificate(std::ostream& out, const SubcoverCertificate& cert) {
  out << "r=" << cert.r << '\n';
  for (const auto& a : cert.assignments) {
    out << "net " << cert.net.at(a.net_index) << " -> element " << a.element << '\n';
  }
  out << "selected ";
  for (std::size_t i = 0; i < cert.selected.size(); ++i) {
    if (i) out << ',';
    out << cert.selected[i];
  }
  out << '\n';
}

namespace {

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(static_cast<std::size_t>(parse_natural(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

SubcoverCertificate parse_certificate(std::string_view text) {
  SubcoverCertificate cert;
  bool have_r = false;
  bool have_selected = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    return ParseError("certificate line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("r=")) {
      if (have_r) throw fail("duplicate r=");
      cert.r = Rational::parse(line.substr(2));
      have_r = true;
      continue;
    }
    std::istringstream words(line);
    std::vector<std::string> fields;
    std::string word;
    while (words >> word) fields.push_back(word);
    if (fields.size() == 5 && fields[0] == "net" && fields[2] == "->" && fields[3] == "element") {
      cert.assignments.push_back({cert.net.size(), static_cast<std::size_t>(parse_natural(fields[4]))});
      cert.net.push_back(Rational::parse(fields[1]));
    } else if (!fields.empty() && fields[0] == "selected" && fields.size() <= 2) {
      if (have_selected) throw fail("duplicate selected line");
      cert.selected = parse_index_list(fields.size() == 2 ? fields[1] : "");
      have_selected = true;
    } else {
      throw fail("unrecognized line '" + line + "'");
    }
  }
  if (!have_r) throw ParseError("certificate: missing r= header");
  if (!have_selected) throw ParseError("certificate: missing selected line");
  return cert;
}

CertificateCheck verify_certificate(const CoverList& cover, const SubcoverCertificate& cert) {
  auto reject = [](std::string reason) { return CertificateCheck{false, std::move(reason)}; };
  if (cert.r.sign() <= 0) return reject("radius " + cert.r.str() + " is not positive");

  std::set<std::size_t> used;
  for (const auto& a : cert.assignments) {
    if (a.net_index >= cert.net.size()) return reject("assignment refers to a missing net point");
    if (a.element >= cover.size()) return reject("element " + std::to_string(a.element) + " out of range");
    const Rational& c = cert.net[a.net_index];
    if (!cover[a.element].contains_ball(c, cert.r)) {
      return reject("element " + std::to_string(a.element) + " does not contain the ball around " + c.str());
    }
    used.insert(a.element);
  }
  if (cert.assignments.size() != cert.net.size()) return reject("some net point has no assignment");
  if (!std::equal(used.begin(), used.end(), cert.selected.begin(), cert.selected.end())) {
    return reject("selected list does not match the assignments");
  }

  // Net density: the r-balls around the net points must cover [0,1].
  std::vector<OpenInterval> balls;
  balls.reserve(cert.net.size());
  for (const auto& c : cert.net) balls.emplace_back(c - cert.r, c + cert.r);
  const CoverageResult density = covers_unit_interval(balls);
  if (const auto* gap = std::get_if<Uncovered>(&density)) {
    return reject("net is not an r-net: " + gap->x.str() + " is farther than r from every net point");
  }
  const CoverageResult coverage = verify_subcover(cover, cert.selected);
  if (const auto* gap = std::get_if<Uncovered>(&coverage)) {
    return reject("selected elements miss " + gap->x.str());
  }
  return {true, {}};
}

}  // namespace cr
