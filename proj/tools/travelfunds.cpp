// Batch front end: allocate, verify and dynamics over instance files.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "travelfunds/commands.hpp"
#include "travelfunds/errors.hpp"

namespace tf = travelfunds;

int main(int argc, char** argv) {
  CLI::App app{"Travel fund allocation mechanisms and their game-theoretic checks"};
  app.require_subcommand(1);

  std::string input;
  std::optional<std::string> mechanism;
  std::string output;
  std::string claim;
  std::size_t grid = 101;
  std::size_t rounds = 50;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "Instance JSON file")->required();
    cmd->add_option("--mechanism", mechanism, "old, new or equal (overrides the file)")
        ->check(CLI::IsMember({"old", "new", "equal"}));
    cmd->add_option("--output", output, "Write the JSON report here");
  };

  auto* allocate = app.add_subcommand("allocate", "Budget and reimburse every faculty member");
  add_common(allocate);

  auto* verify = app.add_subcommand("verify", "Check a strategic claim; exit 0 holds, 2 refuted");
  add_common(verify);
  verify->add_option("--claim", claim, "dominance, nash or no-equilibrium")
      ->required()
      ->check(CLI::IsMember({"dominance", "nash", "no-equilibrium"}));
  verify->add_option("--grid", grid, "Evenly spaced deviation points per player")->check(CLI::Range(2, 100000));
  verify->add_option("--seed", seed, "Seed for sampled opposing profiles");

  auto* dynamics = app.add_subcommand("dynamics", "Run sequential best-response dynamics");
  add_common(dynamics);
  dynamics->add_option("--rounds", rounds, "Maximum number of rounds")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tf::cli::kInputError;
  }

  try {
    const auto file = tf::io::load_instance(input);
    const auto mech = tf::cli::resolve_mechanism(file, mechanism);
    tf::cli::CommandResult result;
    if (allocate->parsed()) {
      result = tf::cli::cmd_allocate(file, mech);
    } else if (verify->parsed()) {
      result = tf::cli::cmd_verify(file, mech, tf::cli::parse_claim(claim), grid, seed);
    } else {
      result = tf::cli::cmd_dynamics(file, mech, rounds);
    }
    if (!output.empty()) tf::io::write_json(output, tf::io::to_json(result.report));
    std::cout << result.summary << '\n';
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tf::cli::kInputError;
  }
}
