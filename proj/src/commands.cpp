#include "travelfunds/commands.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "travelfunds/errors.hpp"

namespace travelfunds::cli {

namespace {

std::vector<StrategyProfile> sample_profiles(const io::InstanceFile& input, std::size_t count, std::uint64_t seed) {
  std::int64_t top = 1;
  for (const auto& e : input.faculty) top = std::max({top, e.request_cents, e.spend_cents});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> cents(1, 2 * top);
  std::vector<StrategyProfile> out(count);
  for (auto& p : out) {
    for (std::size_t i = 0; i < input.faculty.size(); ++i) p.requests.push_back(Money::from_cents(cents(rng)));
  }
  return out;
}

bool strict_regime(const Instance& instance, const StrategyProfile& profile, std::size_t player) {
  const Money others = profile.others_total(player);
  return !others.is_zero() && instance.budget() < others + instance.faculty()[player].spend;
}

io::ProfileLine profile_line(const Instance& instance, const StrategyProfile& profile,
                             const std::optional<Deviation>& deviation) {
  io::ProfileLine line{io::cents_strings(profile), std::nullopt};
  if (deviation) line.witness = io::witness_line(instance, *deviation);
  return line;
}

std::string describe(const Instance& instance, const Deviation& d) {
  std::ostringstream os;
  os << instance.faculty()[d.player].id << " gains by requesting " << d.request.to_string() << " (utility "
     << format_decimal(d.utility_before, 2) << " -> " << format_decimal(d.utility_after, 2) << ")";
  return os.str();
}

}  // namespace

Mechanism resolve_mechanism(const io::InstanceFile& file, const std::optional<std::string>& flag) {
  if (flag) return parse_mechanism(*flag);
  if (file.mechanism) return parse_mechanism(*file.mechanism);
  return Mechanism::New;
}

Claim parse_claim(std::string_view name) {
  if (name == "dominance") return Claim::Dominance;
  if (name == "nash") return Claim::NashEquilibrium;
  if (name == "no-equilibrium") return Claim::NoEquilibriumWitness;
  throw ValidationError("unknown claim '" + std::string(name) + "' (expected dominance, nash or no-equilibrium)");
}

CommandResult cmd_allocate(const io::InstanceFile& input, Mechanism mechanism) {
  CommandResult result;
  result.report = io::allocation_report(input, mechanism);
  const auto& t = result.report.totals;
  std::ostringstream os;
  os << "allocate: mechanism=" << to_string(mechanism) << " faculty=" << input.faculty.size()
     << " budget=" << Money::from_cents(input.budget_cents) << " budgeted=" << Money::from_cents(t.budgeted_cents)
     << " reimbursed=" << Money::from_cents(t.reimbursed_cents)
     << " out_of_pocket=" << Money::from_cents(t.out_of_pocket_cents);
  result.summary = os.str();
  return result;
}

CommandResult cmd_verify(const io::InstanceFile& input, Mechanism mechanism, Claim claim, std::size_t grid_points,
                         std::uint64_t seed) {
  const Instance instance = input.to_instance();
  const StrategyProfile submitted = submitted_profile(instance);

  VerificationReport verdict;
  switch (claim) {
    case Claim::Dominance: {
      if (mechanism != Mechanism::New) {
        throw ValidationError("the dominance claim applies to the new mechanism only");
      }
      const auto samples = sample_profiles(input, kSampledProfiles, seed);
      verdict = {.claim = Claim::Dominance, .holds = true};
      for (std::size_t i = 0; i < instance.size() && verdict.holds; ++i) {
        if (!strict_regime(instance, submitted, i)) {
          throw ValidationError("truthful requests are only weakly optimal for '" + input.faculty[i].id +
                                "': dominance needs 0 < R_-i and budget < R_-i + s_i");
        }
        std::vector<StrategyProfile> opposing{submitted};
        for (const auto& s : samples) {
          if (strict_regime(instance, s, i)) opposing.push_back(s);
        }
        const auto grid = default_grid(Mechanism::New, instance, submitted, grid_points);
        verdict = verify_dominance(Mechanism::New, instance, i, grid, opposing);
      }
      break;
    }
    case Claim::NashEquilibrium:
      verdict = verify_nash(mechanism, instance, submitted, default_grid(mechanism, instance, submitted, grid_points));
      break;
    case Claim::NoEquilibriumWitness: {
      std::vector<StrategyProfile> profiles{submitted, truthful_profile(instance)};
      const auto samples = sample_profiles(input, kSampledProfiles, seed);
      profiles.insert(profiles.end(), samples.begin(), samples.end());
      verdict = verify_no_equilibrium(mechanism, instance, profiles);
      break;
    }
    case Claim::DynamicsTrace:
      throw ValidationError("dynamics is a separate command");
  }

  CommandResult result;
  result.report = io::allocation_report(input, mechanism);
  result.report.command = "verify";
  io::VerificationSection section;
  section.claim = std::string(to_string(claim));
  section.holds = verdict.holds;
  if (verdict.witness) section.witness = io::witness_line(instance, *verdict.witness);
  if (verdict.witness_profile) section.witness_profile = profile_line(instance, *verdict.witness_profile, std::nullopt);
  for (const auto& pw : verdict.profile_witnesses) section.profiles.push_back(profile_line(instance, pw.profile, pw.deviation));
  result.report.verification = std::move(section);
  result.exit_code = verdict.holds ? kSuccess : kRefuted;

  std::ostringstream os;
  os << "verify " << to_string(claim) << ": " << (verdict.holds ? "holds" : "refuted");
  if (verdict.witness) {
    os << ", " << describe(instance, *verdict.witness);
  } else if (claim == Claim::NoEquilibriumWitness) {
    os << (verdict.holds ? ", every examined profile has an improving deviation"
                         : ", an examined profile admits no improving deviation");
  }
  result.summary = os.str();
  return result;
}

CommandResult cmd_dynamics(const io::InstanceFile& input, Mechanism mechanism, std::size_t rounds) {
  const Instance instance = input.to_instance();
  const auto verdict = run_dynamics(mechanism, instance, submitted_profile(instance), rounds);
  const auto& trace = *verdict.trace;

  CommandResult result;
  result.report = io::allocation_report(input, mechanism);
  result.report.command = "dynamics";
  io::DynamicsSection section;
  for (std::size_t k = 0; k < trace.profiles.size(); ++k) {
    section.rounds.push_back({k, io::cents_strings(trace.profiles[k]), trace.total_request[k].round_cents().get_str()});
  }
  section.converged_round = trace.converged_round;
  result.report.dynamics = std::move(section);

  std::ostringstream os;
  os << "dynamics: mechanism=" << to_string(mechanism) << " rounds=" << trace.profiles.size() - 1;
  if (trace.converged_round) {
    os << " converged_round=" << *trace.converged_round;
  } else {
    os << " no fixed point";
  }
  os << " final_total_request=" << trace.total_request.back();
  result.summary = os.str();
  return result;
}

}  // namespace travelfunds::cli
