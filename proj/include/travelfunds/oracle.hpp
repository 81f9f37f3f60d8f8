#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "travelfunds/game.hpp"
#include "travelfunds/mechanisms.hpp"

namespace travelfunds {

/// Finite request game for brute-force analysis. Spends come from the
/// instance; the instance's own requests are ignored.
class DiscretizedGame {
 public:
  static constexpr std::size_t kMaxPlayers = 4;
  static constexpr std::size_t kMaxStrategies = 50;

  /// Sorts and deduplicates each strategy set. Throws SizeError outside the
  /// enumeration bound and ValidationError on misaligned or empty sets.
  DiscretizedGame(Instance instance, std::vector<std::vector<Money>> strategies, Mechanism mechanism);

  const Instance& instance() const noexcept { return instance_; }
  const std::vector<std::vector<Money>>& strategies() const noexcept { return strategies_; }
  Mechanism mechanism() const noexcept { return mechanism_; }
  std::size_t profile_count() const noexcept;

 private:
  Instance instance_;
  std::vector<std::vector<Money>> strategies_;
  Mechanism mechanism_;
};

/// Strategy sets {step, 2 step, ..., count step}, each merged with the
/// player's spend. Zero is left out: against all-zero opponents the rules
/// only rank requests weakly.
DiscretizedGame stepped_game(const Instance& instance, Mechanism mechanism, const Money& step, std::size_t count);

struct OracleResult {
  /// Pure equilibria in enumeration order (last player varies fastest).
  std::vector<StrategyProfile> equilibria;
  /// Per player: the strategy strictly better than every alternative against
  /// every opposing combination, if any.
  std::vector<std::optional<Money>> dominant;

  bool is_equilibrium(const StrategyProfile& profile) const;
  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

/// Exhaustive check of every profile using only mechanism payouts.
OracleResult oracle_enumerate(const DiscretizedGame& game);

}  // namespace travelfunds
