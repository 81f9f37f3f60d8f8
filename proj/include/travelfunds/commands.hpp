#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "travelfunds/game.hpp"
#include "travelfunds/report.hpp"

namespace travelfunds::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kRefuted = 2 };

struct CommandResult {
  int exit_code = kSuccess;
  io::ReportFile report;
  std::string summary;  // one line for stdout
};

/// Flag wins over the file's "mechanism" field; the default is "new".
Mechanism resolve_mechanism(const io::InstanceFile& file, const std::optional<std::string>& flag);

/// Accepts "dominance", "nash", "no-equilibrium".
Claim parse_claim(std::string_view name);

/// Random opposing profiles drawn per verification run.
inline constexpr std::size_t kSampledProfiles = 16;

CommandResult cmd_allocate(const io::InstanceFile& input, Mechanism mechanism);

/// dominance: truthful requests strictly beat every grid deviation for each
///   player against the submitted and sampled opponents (new rule only).
/// nash: the submitted profile admits no improving grid deviation.
/// no-equilibrium: an improving deviation exists at the submitted, truthful
///   and sampled profiles.
/// Exit code 0 when the claim holds, 2 when refuted. Throws ValidationError
/// for incompatible inputs.
CommandResult cmd_verify(const io::InstanceFile& input, Mechanism mechanism, Claim claim, std::size_t grid_points,
                         std::uint64_t seed);

/// Best-response dynamics from the submitted requests.
CommandResult cmd_dynamics(const io::InstanceFile& input, Mechanism mechanism, std::size_t rounds);

}  // namespace travelfunds::cli
