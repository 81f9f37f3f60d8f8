#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "travelfunds/mechanisms.hpp"
#include "travelfunds/money.hpp"

namespace travelfunds {

/// One request per faculty member, aligned with an Instance.
struct StrategyProfile {
  std::vector<Money> requests;

  Money total() const { return sum(requests); }
  /// Sum of every request except `player`'s.
  Money others_total(std::size_t player) const;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

StrategyProfile truthful_profile(const Instance& instance);
StrategyProfile submitted_profile(const Instance& instance);

/// Utility (reimbursed - spent, never positive) of `player` at `profile`.
Rational utility(Mechanism m, const Instance& instance, const StrategyProfile& profile, std::size_t player);

/// Request r* with (B / (R_-i + r*)) r* == target, i.e. r* = t R_-i / (B - t).
/// Throws NoFiniteSolution when target >= budget and ValidationError when
/// others_total is zero.
Money invert_target_request(const Money& target, const Money& others_total, const Money& budget);

struct UniqueRequest {
  Money request;
  friend bool operator==(const UniqueRequest&, const UniqueRequest&) = default;
};
/// Every request at or above `threshold` is optimal (zero out-of-pocket under
/// the old rule); nothing below it is.
struct AnyAtLeast {
  Money threshold;
  friend bool operator==(const AnyAtLeast&, const AnyAtLeast&) = default;
};
/// Every request is strictly beaten by a larger one.
struct NoneExists {
  friend bool operator==(const NoneExists&, const NoneExists&) = default;
};
using BestResponse = std::variant<UniqueRequest, AnyAtLeast, NoneExists>;

/// Optimal request of a player who spends `spend` against opponents whose
/// requests add up to `others_total`. Requires a positive budget.
BestResponse best_response(Mechanism m, const Money& budget, const Money& others_total, const Money& spend);

/// A unilateral change of request that moves `player` from utility_before to
/// utility_after.
struct Deviation {
  std::size_t player = 0;
  Money request;
  Rational utility_before;
  Rational utility_after;
};

/// A strictly improving unilateral deviation, or nullopt when no player has one
/// among the analytic candidates.
///
/// Old: a player with positive out-of-pocket moves to their zero out-of-pocket
/// threshold, or doubles their request when no best response exists.
/// New: a player off r_i = s_i moves to s_i. EqualSplit: requests are
/// irrelevant, so never.
std::optional<Deviation> improving_deviation(Mechanism m, const Instance& instance, const StrategyProfile& profile);

/// Finite per-player candidate requests standing in for "every r_i".
class DeviationGrid {
 public:
  /// Sorts and deduplicates; throws ValidationError on an empty player set.
  explicit DeviationGrid(std::vector<std::vector<Money>> candidates);

  std::size_t players() const noexcept { return candidates_.size(); }
  std::span<const Money> candidates(std::size_t player) const;

  /// Copy with `extra` merged into `player`'s candidates.
  DeviationGrid with(std::size_t player, std::span<const Money> extra) const;

 private:
  std::vector<std::vector<Money>> candidates_;
};

/// `points` evenly spaced requests on [0, 2 max(s_i, r_i, b_i)] per player plus
/// s_i and the closed-form best response at `profile` when one exists.
DeviationGrid default_grid(Mechanism m, const Instance& instance, const StrategyProfile& profile,
                           std::size_t points = 101);

enum class Claim { Dominance, NashEquilibrium, NoEquilibriumWitness, DynamicsTrace };

std::string_view to_string(Claim c);

struct DynamicsTrace {
  /// profiles[0] is the initial profile, profiles[k] the one after round k.
  std::vector<StrategyProfile> profiles;
  std::vector<Money> total_request;
  /// First round k >= 1 after which nobody changes their request.
  std::optional<std::size_t> converged_round;
};

struct ProfileWitness {
  StrategyProfile profile;
  Deviation deviation;
};

struct VerificationReport {
  Claim claim = Claim::NashEquilibrium;
  bool holds = false;
  /// Refutation of a Dominance or NashEquilibrium claim. For Nash the
  /// deviation is strictly improving; for Dominance it is a request doing at
  /// least as well as s_i.
  std::optional<Deviation> witness;
  /// Opposing or full profile the witness was found at.
  std::optional<StrategyProfile> witness_profile;
  /// NoEquilibriumWitness: one improving deviation per examined profile.
  std::vector<ProfileWitness> profile_witnesses;
  std::optional<DynamicsTrace> trace;
};

/// Under the new mechanism, checks u_i(s_i, r_-i) > u_i(r, r_-i) for every
/// grid candidate r != s_i against each opposing profile (entries other than
/// `player` are used). With no opposing profiles the instance's submitted
/// requests are used. Requires a positive budget and, for every opposing
/// profile, 0 < R_-i and B < R_-i + s_i; outside that range truthful requests
/// are only weakly optimal.
VerificationReport verify_dominance(const Instance& instance, std::size_t player, const DeviationGrid& grid,
                                    std::span<const StrategyProfile> opposing = {});

VerificationReport verify_dominance(Mechanism m, const Instance& instance, std::size_t player,
                                    const DeviationGrid& grid, std::span<const StrategyProfile> opposing = {});

struct NashOptions {
  /// Merge s_i and the closed-form best response into each player's grid.
  bool augment = true;
};

/// No player can strictly gain by switching to one of their grid candidates.
/// The witness is the first such player's smallest utility-maximizing
/// candidate.
VerificationReport verify_nash(Mechanism m, const Instance& instance, const StrategyProfile& profile,
                               const DeviationGrid& grid, NashOptions options = {});

/// Holds iff improving_deviation finds a witness at every given profile.
VerificationReport verify_no_equilibrium(Mechanism m, const Instance& instance,
                                         std::span<const StrategyProfile> profiles);

/// Sequential best-response dynamics, lowest index first. Old-rule players
/// already at zero out-of-pocket keep their request, others move to the
/// minimal threshold (or double when none exists); new-rule players request
/// s_i. Stops once a round's result is stationary.
VerificationReport run_dynamics(Mechanism m, const Instance& instance, const StrategyProfile& initial,
                                std::size_t max_rounds);

}  // namespace travelfunds
