#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace travelfunds {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Exact nonnegative amount of dollars.
///
/// Internally a canonical GMP rational; whole cents only appear when values
/// enter from or leave for files. Construction and subtraction reject
/// negative results, so every live Money is >= 0.
class Money {
 public:
  Money() = default;
  explicit Money(Rational dollars);

  static Money from_cents(std::int64_t cents);
  static Money from_cents(const BigInt& cents);
  static Money from_dollars(std::int64_t dollars);

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_whole_cents() const;

  BigInt floor_cents() const;
  /// Nearest cent, ties to even.
  BigInt round_cents() const;
  /// Dollars with two decimals, nearest cent (e.g. "1606.50").
  std::string to_string() const;
  /// Exact "num/den" dollars, or "num" when integral.
  std::string exact_string() const;

  Money& operator+=(const Money& rhs);
  /// Throws ValidationError if rhs > *this.
  Money& operator-=(const Money& rhs);

  Money scaled(const Rational& factor) const;

  friend Money operator+(Money lhs, const Money& rhs) { return lhs += rhs; }
  friend Money operator-(Money lhs, const Money& rhs) { return lhs -= rhs; }

  friend bool operator==(const Money& a, const Money& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Money& a, const Money& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  Rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Money& m);

/// Exact ratio in [0, 1].
class Proportion {
 public:
  Proportion() = default;
  explicit Proportion(Rational ratio);

  static Proportion one() { return Proportion(Rational(1)); }
  /// part / whole; whole must be positive and part <= whole.
  static Proportion of(const Money& part, const Money& whole);

  const Rational& ratio() const noexcept { return ratio_; }

  friend bool operator==(const Proportion& a, const Proportion& b) {
    return cmp(a.ratio_, b.ratio_) == 0;
  }
  friend std::strong_ordering operator<=>(const Proportion& a, const Proportion& b) {
    return cmp(a.ratio_, b.ratio_) <=> 0;
  }

 private:
  Rational ratio_{0};
};

inline Money operator*(const Money& amount, const Proportion& p) { return amount.scaled(p.ratio()); }
inline Money operator*(const Proportion& p, const Money& amount) { return amount.scaled(p.ratio()); }

Money sum(std::span<const Money> amounts);

/// Round to `digits` fractional digits, ties to even; always prints every digit.
std::string format_decimal(const Rational& value, int digits);

/// Rounds nearest, ties to even.
BigInt round_half_even(const Rational& value);

/// Checked narrowing; throws std::overflow_error when out of range.
std::int64_t to_int64(const BigInt& value);

/// Largest-remainder rounding of exact shares to integer cents.
///
/// Each output is the floor-to-cent of its input plus at most one cent and
/// the outputs add up to `target_total` exactly. Leftover cents go to the
/// largest fractional remainders, lowest index first among ties. Throws
/// InvariantViolation unless sum(amounts) == target_total, and
/// ValidationError unless target_total is a whole number of cents.
std::vector<std::int64_t> apportion_to_cents(std::span<const Money> amounts, const Money& target_total);

}  // namespace travelfunds
