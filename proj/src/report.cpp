#include "travelfunds/report.hpp"

#include <fstream>
#include <limits>
#include <set>

#include "travelfunds/errors.hpp"

namespace travelfunds::io {

using nlohmann::json;

namespace {

std::int64_t cents_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ValidationError(std::string("field '") + key + "' is out of range");
  }
  const auto cents = v.get<std::int64_t>();
  if (cents < 0) throw ValidationError(std::string("field '") + key + "' must be nonnegative");
  return cents;
}

json witness_json(const WitnessLine& w) {
  return {{"index", w.index},
          {"id", w.id},
          {"request_cents", w.request_cents},
          {"request_exact", w.request_exact},
          {"utility_before", w.utility_before},
          {"utility_after", w.utility_after}};
}

WitnessLine parse_witness(const json& j) {
  return {j.at("index").get<std::size_t>(),        j.at("id").get<std::string>(),
          j.at("request_cents").get<std::string>(), j.at("request_exact").get<std::string>(),
          j.at("utility_before").get<std::string>(), j.at("utility_after").get<std::string>()};
}

json profile_json(const ProfileLine& p) {
  json j{{"requests_cents", p.requests_cents}};
  if (p.witness) j["witness"] = witness_json(*p.witness);
  return j;
}

ProfileLine parse_profile(const json& j) {
  ProfileLine p{j.at("requests_cents").get<std::vector<std::string>>(), std::nullopt};
  if (j.contains("witness")) p.witness = parse_witness(j.at("witness"));
  return p;
}

}  // namespace

Instance InstanceFile::to_instance() const {
  std::vector<FacultyRecord> records;
  records.reserve(faculty.size());
  for (const auto& e : faculty) {
    records.push_back({e.id, Money::from_cents(e.request_cents), Money::from_cents(e.spend_cents)});
  }
  return Instance(Money::from_cents(budget_cents), std::move(records));
}

InstanceFile parse_instance(const json& doc) {
  if (!doc.is_object()) throw ValidationError("instance document must be a JSON object");
  InstanceFile file;
  file.budget_cents = cents_field(doc, "budget_cents");
  if (doc.contains("mechanism")) {
    if (!doc.at("mechanism").is_string()) throw ValidationError("field 'mechanism' must be a string");
    file.mechanism = doc.at("mechanism").get<std::string>();
    parse_mechanism(*file.mechanism);
  }
  if (!doc.contains("faculty") || !doc.at("faculty").is_array()) {
    throw ValidationError("field 'faculty' must be an array");
  }
  std::set<std::string> seen;
  for (const auto& entry : doc.at("faculty")) {
    if (!entry.is_object()) throw ValidationError("faculty entries must be objects");
    if (!entry.contains("id") || !entry.at("id").is_string()) {
      throw ValidationError("faculty entry needs a string 'id'");
    }
    auto id = entry.at("id").get<std::string>();
    if (id.empty()) throw ValidationError("faculty id must be nonempty");
    if (!seen.insert(id).second) throw ValidationError("duplicate faculty id '" + id + "'");
    file.faculty.push_back({std::move(id), cents_field(entry, "request_cents"), cents_field(entry, "spend_cents")});
  }
  if (file.faculty.empty()) throw ValidationError("instance needs at least one faculty entry");
  return file;
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return parse_instance(doc);
}

json to_json(const InstanceFile& file) {
  json faculty = json::array();
  for (const auto& e : file.faculty) {
    faculty.push_back({{"id", e.id}, {"request_cents", e.request_cents}, {"spend_cents", e.spend_cents}});
  }
  json doc{{"budget_cents", file.budget_cents}, {"faculty", std::move(faculty)}};
  if (file.mechanism) doc["mechanism"] = *file.mechanism;
  return doc;
}

json to_json(const ReportFile& report) {
  json faculty = json::array();
  for (const auto& f : report.faculty) {
    faculty.push_back({{"id", f.id},
                       {"budgeted_cents", f.budgeted_cents},
                       {"reimbursed_cents", f.reimbursed_cents},
                       {"out_of_pocket_cents", f.out_of_pocket_cents},
                       {"proportion_paid", f.proportion_paid}});
  }
  json doc{{"command", report.command},
           {"mechanism", report.mechanism},
           {"input", to_json(report.input)},
           {"faculty", std::move(faculty)},
           {"totals",
            {{"budgeted_cents", report.totals.budgeted_cents},
             {"reimbursed_cents", report.totals.reimbursed_cents},
             {"out_of_pocket_cents", report.totals.out_of_pocket_cents}}}};

  if (const auto& v = report.verification) {
    json section{{"claim", v->claim}, {"holds", v->holds}};
    if (v->witness) section["witness"] = witness_json(*v->witness);
    if (v->witness_profile) section["witness_profile"] = profile_json(*v->witness_profile);
    json profiles = json::array();
    for (const auto& p : v->profiles) profiles.push_back(profile_json(p));
    section["profiles"] = std::move(profiles);
    doc["verification"] = std::move(section);
  }
  if (const auto& d = report.dynamics) {
    json rounds = json::array();
    for (const auto& r : d->rounds) {
      rounds.push_back(
          {{"round", r.round}, {"requests_cents", r.requests_cents}, {"total_request_cents", r.total_request_cents}});
    }
    doc["dynamics"] = {{"rounds", std::move(rounds)},
                       {"converged_round", d->converged_round ? json(*d->converged_round) : json(nullptr)}};
  }
  return doc;
}

ReportFile parse_report(const json& doc) {
  ReportFile report;
  report.command = doc.at("command").get<std::string>();
  report.mechanism = doc.at("mechanism").get<std::string>();
  report.input = parse_instance(doc.at("input"));
  for (const auto& f : doc.at("faculty")) {
    report.faculty.push_back({f.at("id").get<std::string>(), f.at("budgeted_cents").get<std::int64_t>(),
                              f.at("reimbursed_cents").get<std::int64_t>(),
                              f.at("out_of_pocket_cents").get<std::int64_t>(),
                              f.at("proportion_paid").get<std::string>()});
  }
  const auto& t = doc.at("totals");
  report.totals = {t.at("budgeted_cents").get<std::int64_t>(), t.at("reimbursed_cents").get<std::int64_t>(),
                   t.at("out_of_pocket_cents").get<std::int64_t>()};

  if (doc.contains("verification")) {
    const auto& v = doc.at("verification");
    VerificationSection section;
    section.claim = v.at("claim").get<std::string>();
    section.holds = v.at("holds").get<bool>();
    if (v.contains("witness")) section.witness = parse_witness(v.at("witness"));
    if (v.contains("witness_profile")) section.witness_profile = parse_profile(v.at("witness_profile"));
    for (const auto& p : v.at("profiles")) section.profiles.push_back(parse_profile(p));
    report.verification = std::move(section);
  }
  if (doc.contains("dynamics")) {
    const auto& d = doc.at("dynamics");
    DynamicsSection section;
    for (const auto& r : d.at("rounds")) {
      section.rounds.push_back({r.at("round").get<std::size_t>(), r.at("requests_cents").get<std::vector<std::string>>(),
                                r.at("total_request_cents").get<std::string>()});
    }
    if (!d.at("converged_round").is_null()) section.converged_round = d.at("converged_round").get<std::size_t>();
    report.dynamics = std::move(section);
  }
  return report;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

ReportFile allocation_report(const InstanceFile& input, Mechanism mechanism) {
  const Instance instance = input.to_instance();
  const Outcome outcome = compute_outcome(instance, mechanism);

  std::vector<Money> budgeted;
  for (const auto& f : outcome.faculty) budgeted.push_back(f.budgeted);
  const auto budgeted_cents = apportion_to_cents(budgeted, outcome.total_budgeted());

  ReportFile report;
  report.command = "allocate";
  report.mechanism = std::string(to_string(mechanism));
  report.input = input;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto& f = outcome.faculty[i];
    FacultyLine line;
    line.id = input.faculty[i].id;
    line.budgeted_cents = budgeted_cents[i];
    line.reimbursed_cents = to_int64(f.reimbursed.floor_cents());
    line.out_of_pocket_cents = input.faculty[i].spend_cents - line.reimbursed_cents;
    line.proportion_paid = format_decimal(f.proportion_paid.ratio(), 6);
    report.totals.budgeted_cents += line.budgeted_cents;
    report.totals.reimbursed_cents += line.reimbursed_cents;
    report.totals.out_of_pocket_cents += line.out_of_pocket_cents;
    report.faculty.push_back(std::move(line));
  }
  return report;
}

WitnessLine witness_line(const Instance& instance, const Deviation& deviation) {
  return {deviation.player,
          instance.faculty()[deviation.player].id,
          deviation.request.round_cents().get_str(),
          deviation.request.exact_string(),
          deviation.utility_before.get_str(),
          deviation.utility_after.get_str()};
}

std::vector<std::string> cents_strings(const StrategyProfile& profile) {
  std::vector<std::string> out;
  out.reserve(profile.requests.size());
  for (const auto& r : profile.requests) out.push_back(r.round_cents().get_str());
  return out;
}

}  // namespace travelfunds::io
