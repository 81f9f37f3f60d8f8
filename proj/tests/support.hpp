#pragma once

// Shared helpers for the unit and acceptance suites: instance builders and
// seeded random generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "travelfunds/game.hpp"
#include "travelfunds/mechanisms.hpp"
#include "travelfunds/money.hpp"

namespace travelfunds::testing {

inline Money dollars(std::int64_t d) { return Money::from_dollars(d); }
inline Money cents(std::int64_t c) { return Money::from_cents(c); }

/// Instance from parallel request/spend vectors; ids are "f0", "f1", ...
inline Instance make_instance(const Money& budget, const std::vector<Money>& requests,
                              const std::vector<Money>& spends) {
  std::vector<FacultyRecord> faculty;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    faculty.push_back({"f" + std::to_string(i), requests[i], spends[i]});
  }
  return Instance(budget, std::move(faculty));
}

/// B = 75,000, faculty 0 requests 1,200 against others totalling 98,800.
inline Instance worked_example(const Money& request0 = dollars(1200), const Money& spend0 = dollars(1200)) {
  std::vector<Money> requests{request0, dollars(24700), dollars(24700), dollars(24700), dollars(24700)};
  std::vector<Money> spends{spend0, dollars(24700), dollars(24700), dollars(24700), dollars(24700)};
  return make_instance(dollars(75000), requests, spends);
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  Money cents_in(std::int64_t lo, std::int64_t hi) { return Money::from_cents(uniform(lo, hi)); }

  std::vector<Money> amounts(std::size_t n, std::int64_t lo, std::int64_t hi) {
    std::vector<Money> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(cents_in(lo, hi));
    return out;
  }

  /// Random spends and requests in [1, 10^6] cents, n in [2, 10], with the
  /// budget strictly below min_i (R_-i + s_i) and below sum(s), so that every
  /// player faces B < R whether they tell the truth or not.
  Instance scarce_instance() {
    const auto n = static_cast<std::size_t>(uniform(2, 10));
    auto spends = amounts(n, 1, 1'000'000);
    auto requests = amounts(n, 1, 1'000'000);
    const Money total_r = sum(requests);
    Money bound = sum(spends);
    for (std::size_t i = 0; i < n; ++i) bound = std::min(bound, total_r - requests[i] + spends[i]);
    const auto top = to_int64(bound.floor_cents()) - 1;
    return make_instance(cents_in(1, top), requests, spends);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace travelfunds::testing
