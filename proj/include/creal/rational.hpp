#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cr {

/// Exact fraction of unbounded integers, always kept in canonical form:
/// denominator > 0 and gcd(|numerator|, denominator) = 1. Equality of
/// canonical forms is therefore structural.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& value) : num_(value), den_(1) {}

  /// Throws ZeroDenominator when den == 0.
  Rational(mpz_class num, mpz_class den);
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

  /// Accepts `[-]digits[/digits]` or a finite decimal `[-]digits[.digits]`.
  static Rational parse(std::string_view text);

  /// 2^exponent, exact for negative exponents too.
  static Rational pow2(std::int64_t exponent);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }

  int sign() const { return sgn(num_); }
  bool is_integer() const { return den_ == 1; }

  /// Canonical `p/q`; the denominator is always printed.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws ZeroDenominator on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Canonical {};
  Rational(mpz_class num, mpz_class den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  mpz_class num_;
  mpz_class den_;
};

enum class Ordering { Less, Equal, Greater };

/// Decidable comparison of rationals via cross-multiplication.
Ordering compare(const Rational& a, const Rational& b);

Rational abs(const Rational& value);
mpz_class floor(const Rational& value);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& value);
const char* to_string(Ordering ordering);

/// Parses a decimal natural number (no sign). Throws ParseError.
std::uint64_t parse_natural(std::string_view text);

}  // namespace cr
