#include "travelfunds/money.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "travelfunds/errors.hpp"

namespace travelfunds {

namespace {

BigInt floor_of(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt pow10(int digits) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return p;
}

}  // namespace

Money::Money(Rational dollars) : value_(std::move(dollars)) {
  value_.canonicalize();
  if (sgn(value_) < 0) {
    throw ValidationError("negative monetary amount: " + value_.get_str());
  }
}

Money Money::from_cents(std::int64_t cents) {
  return Money(Rational(BigInt(static_cast<long>(cents)), BigInt(100)));
}

Money Money::from_cents(const BigInt& cents) { return Money(Rational(cents, BigInt(100))); }

Money Money::from_dollars(std::int64_t dollars) { return Money(Rational(static_cast<long>(dollars))); }

bool Money::is_whole_cents() const {
  Rational c = value_ * 100;
  c.canonicalize();
  return c.get_den() == 1;
}

BigInt Money::floor_cents() const { return floor_of(value_ * 100); }

BigInt Money::round_cents() const { return round_half_even(value_ * 100); }

std::string Money::to_string() const { return format_decimal(value_, 2); }

std::string Money::exact_string() const { return value_.get_str(); }

Money& Money::operator+=(const Money& rhs) {
  value_ += rhs.value_;
  return *this;
}

Money& Money::operator-=(const Money& rhs) {
  if (cmp(rhs.value_, value_) > 0) {
    throw ValidationError("money subtraction below zero: " + value_.get_str() + " - " +
                          rhs.value_.get_str());
  }
  value_ -= rhs.value_;
  return *this;
}

Money Money::scaled(const Rational& factor) const { return Money(value_ * factor); }

std::ostream& operator<<(std::ostream& os, const Money& m) { return os << m.to_string(); }

Proportion::Proportion(Rational ratio) : ratio_(std::move(ratio)) {
  ratio_.canonicalize();
  if (sgn(ratio_) < 0 || cmp(ratio_, 1) > 0) {
    throw ValidationError("proportion outside [0, 1]: " + ratio_.get_str());
  }
}

Proportion Proportion::of(const Money& part, const Money& whole) {
  if (whole.is_zero()) throw ValidationError("proportion of a zero amount");
  return Proportion(Rational(part.value() / whole.value()));
}

Money sum(std::span<const Money> amounts) {
  Rational total = 0;
  for (const auto& a : amounts) total += a.value();
  return Money(total);
}

BigInt round_half_even(const Rational& value) {
  BigInt q = floor_of(value);
  Rational frac = value - Rational(q);
  int c = cmp(frac, Rational(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  return q;
}

std::string format_decimal(const Rational& value, int digits) {
  BigInt k = round_half_even(value * Rational(pow10(digits)));
  const bool negative = sgn(k) < 0;
  std::string s = BigInt(abs(k)).get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
  }
  return negative ? "-" + s : s;
}

std::int64_t to_int64(const BigInt& value) {
  if (cmp(value, BigInt(std::numeric_limits<long>::max())) > 0 ||
      cmp(value, BigInt(std::numeric_limits<long>::min())) < 0) {
    throw std::overflow_error("value does not fit in 64 bits: " + value.get_str());
  }
  return value.get_si();
}

std::vector<std::int64_t> apportion_to_cents(std::span<const Money> amounts, const Money& target_total) {
  if (!target_total.is_whole_cents()) {
    throw ValidationError("apportionment target is not a whole number of cents: " +
                          target_total.exact_string());
  }
  if (sum(amounts) != target_total) {
    throw InvariantViolation("apportionment shares sum to " + sum(amounts).exact_string() +
                             ", target is " + target_total.exact_string());
  }

  std::vector<std::int64_t> cents(amounts.size());
  std::vector<Rational> remainder(amounts.size());
  BigInt assigned = 0;
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    Rational scaled = amounts[i].value() * 100;
    BigInt fl = floor_of(scaled);
    cents[i] = to_int64(fl);
    remainder[i] = scaled - Rational(fl);
    assigned += fl;
  }

  // Fewer than amounts.size() cents remain since each remainder is < 1.
  const std::int64_t leftover = to_int64(target_total.round_cents() - assigned);
  std::vector<std::size_t> order(amounts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cmp(remainder[a], remainder[b]) > 0;
  });
  for (std::int64_t k = 0; k < leftover; ++k) cents[order[static_cast<std::size_t>(k)]] += 1;
  return cents;
}

}  // namespace travelfunds
