#include "creal/rational.hpp"

#include <ostream>

#include "creal/errors.hpp"

namespace cr {

namespace {

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class to_mpz(std::string_view digits) { return mpz_class(std::string(digits), 10); }

}  // namespace

Rational::Rational(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw ZeroDenominator();
  canonicalize();
}

void Rational::canonicalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  mpz_class g = gcd(num_, den_);
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&]() -> ParseError {
    return ParseError("malformed rational '" + std::string(original) +
                      "' (expected [-]digits[/digits] or [-]digits[.digits])");
  };
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  mpz_class num;
  mpz_class den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto top = text.substr(0, slash);
    auto bottom = text.substr(slash + 1);
    if (!all_digits(top) || !all_digits(bottom)) throw fail();
    num = to_mpz(top);
    den = to_mpz(bottom);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) throw fail();
    mpz_pow_ui(den.get_mpz_t(), mpz_class(10).get_mpz_t(), frac.size());
    num = to_mpz(whole) * den + to_mpz(frac);
  } else {
    if (!all_digits(text)) throw fail();
    num = to_mpz(text);
  }
  if (negative) num = -num;
  return Rational(std::move(num), std::move(den));
}

Rational Rational::pow2(std::int64_t exponent) {
  mpz_class power = 1;
  const auto magnitude = static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(power.get_mpz_t(), power.get_mpz_t(), magnitude);
  if (exponent >= 0) return Rational(std::move(power), mpz_class(1), Canonical{});
  return Rational(mpz_class(1), std::move(power), Canonical{});
}

std::string Rational::str() const { return num_.get_str() + "/" + den_.get_str(); }

Rational Rational::operator-() const { return Rational(-num_, den_, Canonical{}); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  canonicalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ -= rhs.num_;
  } else {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  canonicalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw ZeroDenominator();
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Ordering compare(const Rational& a, const Rational& b) {
  const auto order = a <=> b;
  if (order < 0) return Ordering::Less;
  if (order > 0) return Ordering::Greater;
  return Ordering::Equal;
}

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

mpz_class floor(const Rational& value) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value.num().get_mpz_t(), value.den().get_mpz_t());
  return out;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

const char* to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "?";
}

std::uint64_t parse_natural(std::string_view text) {
  if (!all_digits(text) || text.size() > 19) {
    throw ParseError("malformed natural '" + std::string(text) + "' (expected digits)");
  }
  return std::stoull(std::string(text));
}

}  // namespace cr
