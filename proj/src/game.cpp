#include "travelfunds/game.hpp"

#include <algorithm>

#include "travelfunds/errors.hpp"

namespace travelfunds {

namespace {

void check_aligned(const Instance& instance, const StrategyProfile& profile) {
  if (profile.requests.size() != instance.size()) {
    throw ValidationError("strategy profile has " + std::to_string(profile.requests.size()) +
                          " requests for " + std::to_string(instance.size()) + " faculty");
  }
}

Rational player_utility(Mechanism m, const Instance& instance, const Money& others, const Money& request,
                        const Money& spend) {
  const Money paid = unilateral_reimbursement(m, instance.budget(), others, request, spend, instance.size());
  return paid.value() - spend.value();
}

/// Request the dynamics move a player to, given everyone else's total.
Money next_request(Mechanism m, const Money& budget, const Money& others, const Money& current,
                   const Money& spend) {
  switch (m) {
    case Mechanism::New:
      return spend;
    case Mechanism::EqualSplit:
      return current;
    case Mechanism::Old:
      break;
  }
  if (budget.is_zero()) return current;
  const BestResponse br = best_response(m, budget, others, spend);
  if (const auto* at_least = std::get_if<AnyAtLeast>(&br)) {
    return current >= at_least->threshold ? current : at_least->threshold;
  }
  return current.is_zero() ? spend : current + current;
}

std::vector<Money> merged(std::span<const Money> base, std::span<const Money> extra) {
  std::vector<Money> out(base.begin(), base.end());
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// s_i plus the closed-form best response, when it is a single number.
std::vector<Money> analytic_candidates(Mechanism m, const Money& budget, const Money& others, const Money& spend) {
  std::vector<Money> out{spend};
  if (m == Mechanism::Old && !budget.is_zero()) {
    const BestResponse br = best_response(m, budget, others, spend);
    if (const auto* t = std::get_if<AnyAtLeast>(&br)) out.push_back(t->threshold);
  }
  return out;
}

}  // namespace

Money StrategyProfile::others_total(std::size_t player) const {
  Money total;
  for (std::size_t j = 0; j < requests.size(); ++j) {
    if (j != player) total += requests[j];
  }
  return total;
}

StrategyProfile truthful_profile(const Instance& instance) { return {instance.spends()}; }

StrategyProfile submitted_profile(const Instance& instance) { return {instance.requests()}; }

Rational utility(Mechanism m, const Instance& instance, const StrategyProfile& profile, std::size_t player) {
  check_aligned(instance, profile);
  if (player >= instance.size()) throw ValidationError("player index out of range");
  return player_utility(m, instance, profile.others_total(player), profile.requests[player],
                        instance.faculty()[player].spend);
}

Money invert_target_request(const Money& target, const Money& others_total, const Money& budget) {
  if (target >= budget) {
    throw NoFiniteSolution("budgeted amount " + target.to_string() + " is never reached below the budget " +
                           budget.to_string());
  }
  // Below R_-i + t = B the budget covers the request outright and b_i = r_i.
  const Money proportional(target.value() * others_total.value() / (budget.value() - target.value()));
  return std::max(target, proportional);
}

BestResponse best_response(Mechanism m, const Money& budget, const Money& others_total, const Money& spend) {
  if (budget.is_zero()) throw ValidationError("best response needs a positive budget");
  switch (m) {
    case Mechanism::New:
      return UniqueRequest{spend};
    case Mechanism::EqualSplit:
      return AnyAtLeast{Money{}};
    case Mechanism::Old:
      break;
  }
  if (spend < budget) return AnyAtLeast{invert_target_request(spend, others_total, budget)};
  // Alone, any request of at least B collects the whole budget.
  if (others_total.is_zero()) return AnyAtLeast{budget};
  return NoneExists{};
}

std::optional<Deviation> improving_deviation(Mechanism m, const Instance& instance, const StrategyProfile& profile) {
  check_aligned(instance, profile);
  if (m == Mechanism::EqualSplit) return std::nullopt;

  const Money& budget = instance.budget();
  const Money total = profile.total();
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Money& spend = instance.faculty()[i].spend;
    const Money& current = profile.requests[i];
    const Money others = total - current;
    const Rational before = player_utility(m, instance, others, current, spend);

    Money candidate;
    if (m == Mechanism::New) {
      if (current == spend) continue;
      candidate = spend;
    } else {
      if (sgn(before) == 0 || budget.is_zero()) continue;
      candidate = next_request(m, budget, others, current, spend);
    }
    Rational after = player_utility(m, instance, others, candidate, spend);
    if (after > before) return Deviation{i, std::move(candidate), before, std::move(after)};
  }
  return std::nullopt;
}

DeviationGrid::DeviationGrid(std::vector<std::vector<Money>> candidates) : candidates_(std::move(candidates)) {
  if (candidates_.empty()) throw ValidationError("deviation grid has no players");
  for (auto& set : candidates_) {
    if (set.empty()) throw ValidationError("deviation grid has a player with no candidates");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
}

std::span<const Money> DeviationGrid::candidates(std::size_t player) const {
  if (player >= candidates_.size()) throw ValidationError("deviation grid has no entry for that player");
  return candidates_[player];
}

DeviationGrid DeviationGrid::with(std::size_t player, std::span<const Money> extra) const {
  auto copy = candidates_;
  copy.at(player) = merged(copy.at(player), extra);
  return DeviationGrid(std::move(copy));
}

DeviationGrid default_grid(Mechanism m, const Instance& instance, const StrategyProfile& profile,
                           std::size_t points) {
  check_aligned(instance, profile);
  if (points < 2) throw ValidationError("deviation grid needs at least two evenly spaced points");
  const auto budgeted = allocations(m, instance.budget(), profile.requests);
  const Money total = profile.total();

  std::vector<std::vector<Money>> grid(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Money& spend = instance.faculty()[i].spend;
    const Money& request = profile.requests[i];
    const Money top = std::max({spend, request, budgeted[i]}).scaled(2);
    auto& set = grid[i];
    set.reserve(points + 2);
    for (std::size_t k = 0; k < points; ++k) {
      set.push_back(top.scaled(Rational(static_cast<unsigned long>(k), static_cast<unsigned long>(points - 1))));
    }
    auto extra = analytic_candidates(m, instance.budget(), total - request, spend);
    set.insert(set.end(), extra.begin(), extra.end());
  }
  return DeviationGrid(std::move(grid));
}

std::string_view to_string(Claim c) {
  switch (c) {
    case Claim::Dominance: return "dominance";
    case Claim::NashEquilibrium: return "nash";
    case Claim::NoEquilibriumWitness: return "no-equilibrium";
    case Claim::DynamicsTrace: return "dynamics";
  }
  return "?";
}

VerificationReport verify_dominance(Mechanism m, const Instance& instance, std::size_t player,
                                    const DeviationGrid& grid, std::span<const StrategyProfile> opposing) {
  if (m != Mechanism::New) {
    throw ValidationError("strict dominance of truthful requests is a property of the new mechanism only");
  }
  return verify_dominance(instance, player, grid, opposing);
}

VerificationReport verify_dominance(const Instance& instance, std::size_t player, const DeviationGrid& grid,
                                    std::span<const StrategyProfile> opposing) {
  if (player >= instance.size()) throw ValidationError("player index out of range");
  const auto candidates = grid.candidates(player);
  const Money& budget = instance.budget();
  if (budget.is_zero()) throw ValidationError("strict dominance needs a positive budget");

  const std::vector<StrategyProfile> fallback{submitted_profile(instance)};
  if (opposing.empty()) opposing = fallback;

  const Money& spend = instance.faculty()[player].spend;
  VerificationReport report{.claim = Claim::Dominance, .holds = true};
  for (const auto& profile : opposing) {
    check_aligned(instance, profile);
    const Money others = profile.others_total(player);
    if (others.is_zero() || budget >= others + spend) {
      throw ValidationError("strict dominance needs 0 < R_-i and B < R_-i + s_i; got B = " + budget.to_string() +
                            ", R_-i = " + others.to_string() + ", s_i = " + spend.to_string());
    }
    const Rational truthful = player_utility(Mechanism::New, instance, others, spend, spend);
    for (const auto& r : candidates) {
      if (r == spend) continue;
      Rational u = player_utility(Mechanism::New, instance, others, r, spend);
      if (u >= truthful) {
        report.holds = false;
        report.witness = Deviation{player, r, truthful, std::move(u)};
        report.witness_profile = profile;
        return report;
      }
    }
  }
  return report;
}

VerificationReport verify_nash(Mechanism m, const Instance& instance, const StrategyProfile& profile,
                               const DeviationGrid& grid, NashOptions options) {
  check_aligned(instance, profile);
  if (grid.players() != instance.size()) {
    throw ValidationError("deviation grid covers " + std::to_string(grid.players()) + " players, instance has " +
                          std::to_string(instance.size()));
  }
  VerificationReport report{.claim = Claim::NashEquilibrium, .holds = true};
  const Money total = profile.total();
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Money& spend = instance.faculty()[i].spend;
    const Money& current = profile.requests[i];
    const Money others = total - current;
    const auto candidates =
        options.augment ? merged(grid.candidates(i), analytic_candidates(m, instance.budget(), others, spend))
                        : std::vector<Money>(grid.candidates(i).begin(), grid.candidates(i).end());

    const Rational before = player_utility(m, instance, others, current, spend);
    Rational best = before;
    std::optional<Money> best_request;
    for (const auto& r : candidates) {
      if (r == current) continue;
      Rational u = player_utility(m, instance, others, r, spend);
      if (u > best) {
        best = std::move(u);
        best_request = r;
      }
    }
    if (best_request) {
      report.holds = false;
      report.witness = Deviation{i, *best_request, before, best};
      report.witness_profile = profile;
      return report;
    }
  }
  return report;
}

VerificationReport verify_no_equilibrium(Mechanism m, const Instance& instance,
                                         std::span<const StrategyProfile> profiles) {
  VerificationReport report{.claim = Claim::NoEquilibriumWitness, .holds = true};
  for (const auto& profile : profiles) {
    auto deviation = improving_deviation(m, instance, profile);
    if (!deviation) {
      report.holds = false;
      report.witness_profile = profile;
      return report;
    }
    report.profile_witnesses.push_back({profile, std::move(*deviation)});
  }
  return report;
}

VerificationReport run_dynamics(Mechanism m, const Instance& instance, const StrategyProfile& initial,
                                std::size_t max_rounds) {
  check_aligned(instance, initial);
  if (max_rounds == 0) throw ValidationError("dynamics needs at least one round");

  const Money& budget = instance.budget();
  const auto faculty = instance.faculty();
  StrategyProfile profile = initial;
  Money total = profile.total();

  DynamicsTrace trace;
  trace.profiles.push_back(profile);
  trace.total_request.push_back(total);

  // A round in which nobody moves proves the previous profile stationary; it
  // is not recorded unless it is the first round.
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < profile.requests.size(); ++i) {
      Money& r = profile.requests[i];
      const Money others = total - r;
      Money next = next_request(m, budget, others, r, faculty[i].spend);
      if (next != r) {
        changed = true;
        r = std::move(next);
        total = others + r;
      }
    }
    if (!changed) {
      if (round == 1) {
        trace.profiles.push_back(profile);
        trace.total_request.push_back(total);
      }
      trace.converged_round = std::max<std::size_t>(round - 1, 1);
      break;
    }
    trace.profiles.push_back(profile);
    trace.total_request.push_back(total);
  }

  if (!trace.converged_round) {
    bool stationary = true;
    for (std::size_t i = 0; i < profile.requests.size() && stationary; ++i) {
      const Money& r = profile.requests[i];
      stationary = next_request(m, budget, total - r, r, faculty[i].spend) == r;
    }
    if (stationary) trace.converged_round = max_rounds;
  }

  VerificationReport report{.claim = Claim::DynamicsTrace, .holds = trace.converged_round.has_value()};
  report.trace = std::move(trace);
  return report;
}

}  // namespace travelfunds
