#pragma once

// Exact rational numbers on top of GMP's mpq_class.
//
// Every Rational is kept in canonical form: lowest terms, positive
// denominator, zero stored as 0/1. Arithmetic never rounds.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace firstswap {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long numerator, long denominator);
  Rational(const BigInt& numerator, const BigInt& denominator);
  explicit Rational(const BigInt& integer) : value_(integer) {}
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p" in decimal. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  /// Nearest double (GMP truncates; the error is below one ulp).
  double to_double() const { return value_.get_d(); }

  /// "numerator/denominator", always with the slash.
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(unsigned long n, unsigned long k);

}  // namespace firstswap
