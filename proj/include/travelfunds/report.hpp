#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "travelfunds/game.hpp"
#include "travelfunds/mechanisms.hpp"

namespace travelfunds::io {

/// Instance document. Every amount is an integer number of cents.
struct InstanceFile {
  struct Entry {
    std::string id;
    std::int64_t request_cents = 0;
    std::int64_t spend_cents = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::int64_t budget_cents = 0;
  std::vector<Entry> faculty;
  std::optional<std::string> mechanism;

  Instance to_instance() const;
  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

struct FacultyLine {
  std::string id;
  std::int64_t budgeted_cents = 0;
  std::int64_t reimbursed_cents = 0;
  std::int64_t out_of_pocket_cents = 0;
  std::string proportion_paid;  // six fractional digits
  friend bool operator==(const FacultyLine&, const FacultyLine&) = default;
};

struct Totals {
  std::int64_t budgeted_cents = 0;
  std::int64_t reimbursed_cents = 0;
  std::int64_t out_of_pocket_cents = 0;
  friend bool operator==(const Totals&, const Totals&) = default;
};

// Requests found by the analysis are unbounded (the old rule's request race
// grows geometrically), so their cents are written as decimal digit strings.
struct WitnessLine {
  std::size_t index = 0;
  std::string id;
  std::string request_cents;  // nearest cent
  std::string request_exact;  // dollars, "num/den"
  std::string utility_before;
  std::string utility_after;
  friend bool operator==(const WitnessLine&, const WitnessLine&) = default;
};

struct ProfileLine {
  std::vector<std::string> requests_cents;
  std::optional<WitnessLine> witness;
  friend bool operator==(const ProfileLine&, const ProfileLine&) = default;
};

struct VerificationSection {
  std::string claim;
  bool holds = false;
  std::optional<WitnessLine> witness;
  std::optional<ProfileLine> witness_profile;
  std::vector<ProfileLine> profiles;
  friend bool operator==(const VerificationSection&, const VerificationSection&) = default;
};

struct RoundLine {
  std::size_t round = 0;
  std::vector<std::string> requests_cents;
  std::string total_request_cents;
  friend bool operator==(const RoundLine&, const RoundLine&) = default;
};

struct DynamicsSection {
  std::vector<RoundLine> rounds;
  std::optional<std::size_t> converged_round;
  friend bool operator==(const DynamicsSection&, const DynamicsSection&) = default;
};

struct ReportFile {
  std::string command;
  std::string mechanism;
  InstanceFile input;
  std::vector<FacultyLine> faculty;
  Totals totals;
  std::optional<VerificationSection> verification;
  std::optional<DynamicsSection> dynamics;
  friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

/// Throws ValidationError on schema violations: missing or non-integer
/// fields, negative cents, empty or duplicate ids, no faculty.
InstanceFile parse_instance(const nlohmann::json& doc);
InstanceFile load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const InstanceFile& file);
nlohmann::json to_json(const ReportFile& report);
ReportFile parse_report(const nlohmann::json& doc);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Per-faculty cent figures: allocations apportioned to the exact budgeted
/// total, reimbursements floored.
ReportFile allocation_report(const InstanceFile& input, Mechanism mechanism);

WitnessLine witness_line(const Instance& instance, const Deviation& deviation);
std::vector<std::string> cents_strings(const StrategyProfile& profile);

}  // namespace travelfunds::io
