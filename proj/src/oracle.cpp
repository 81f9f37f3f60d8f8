#include "travelfunds/oracle.hpp"

#include <algorithm>

#include "travelfunds/errors.hpp"

namespace travelfunds {

DiscretizedGame::DiscretizedGame(Instance instance, std::vector<std::vector<Money>> strategies, Mechanism mechanism)
    : instance_(std::move(instance)), strategies_(std::move(strategies)), mechanism_(mechanism) {
  if (strategies_.size() != instance_.size()) {
    throw ValidationError("one strategy set per faculty member is required");
  }
  if (strategies_.size() > kMaxPlayers) {
    throw SizeError("oracle enumeration supports at most " + std::to_string(kMaxPlayers) + " players, got " +
                    std::to_string(strategies_.size()));
  }
  for (auto& set : strategies_) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty()) throw ValidationError("empty strategy set");
    if (set.size() > kMaxStrategies) {
      throw SizeError("strategy set of " + std::to_string(set.size()) + " exceeds " +
                      std::to_string(kMaxStrategies));
    }
  }
}

std::size_t DiscretizedGame::profile_count() const noexcept {
  std::size_t count = 1;
  for (const auto& set : strategies_) count *= set.size();
  return count;
}

DiscretizedGame stepped_game(const Instance& instance, Mechanism mechanism, const Money& step, std::size_t count) {
  std::vector<std::vector<Money>> sets(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    for (std::size_t k = 1; k <= count; ++k) sets[i].push_back(step.scaled(static_cast<unsigned long>(k)));
    sets[i].push_back(instance.faculty()[i].spend);
  }
  return DiscretizedGame(instance, std::move(sets), mechanism);
}

bool OracleResult::is_equilibrium(const StrategyProfile& profile) const {
  return std::find(equilibria.begin(), equilibria.end(), profile) != equilibria.end();
}

OracleResult oracle_enumerate(const DiscretizedGame& game) {
  const auto& sets = game.strategies();
  const std::size_t n = sets.size();
  const std::size_t total = game.profile_count();
  const auto spends = game.instance().spends();
  const Money& budget = game.instance().budget();

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t j = n - 1; j > 0; --j) stride[j - 1] = stride[j] * sets[j].size();
  auto digit = [&](std::size_t p, std::size_t j) { return (p / stride[j]) % sets[j].size(); };
  auto requests_at = [&](std::size_t p) {
    std::vector<Money> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = sets[j][digit(p, j)];
    return r;
  };

  std::vector<char> stable(total, 1);
  OracleResult result;
  result.dominant.resize(n);

  std::vector<Rational> u;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = sets[i].size();
    std::optional<std::size_t> dominant_index;
    bool dominance_possible = true;
    for (std::size_t base = 0; base < total; ++base) {
      if (digit(base, i) != 0) continue;
      auto requests = requests_at(base);
      u.assign(k, Rational(0));
      for (std::size_t a = 0; a < k; ++a) {
        requests[i] = sets[i][a];
        const auto paid = reimbursements(game.mechanism(), budget, requests, spends);
        u[a] = paid[i].value() - spends[i].value();
      }
      const auto best = std::max_element(u.begin(), u.end());
      const auto ties = std::count(u.begin(), u.end(), *best);
      for (std::size_t a = 0; a < k; ++a) {
        if (u[a] != *best) stable[base + a * stride[i]] = 0;
      }
      if (dominance_possible) {
        const auto arg = static_cast<std::size_t>(best - u.begin());
        if (ties != 1 || (dominant_index && *dominant_index != arg)) {
          dominance_possible = false;
        } else {
          dominant_index = arg;
        }
      }
    }
    if (dominance_possible && dominant_index) result.dominant[i] = sets[i][*dominant_index];
  }

  for (std::size_t p = 0; p < total; ++p) {
    if (stable[p]) result.equilibria.push_back(StrategyProfile{requests_at(p)});
  }
  return result;
}

}  // namespace travelfunds
