#include "travelfunds/mechanisms.hpp"

#include <algorithm>

#include "travelfunds/errors.hpp"

namespace travelfunds {

std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Old: return "old";
    case Mechanism::New: return "new";
    case Mechanism::EqualSplit: return "equal";
  }
  return "?";
}

Mechanism parse_mechanism(std::string_view name) {
  if (name == "old") return Mechanism::Old;
  if (name == "new") return Mechanism::New;
  if (name == "equal") return Mechanism::EqualSplit;
  throw ValidationError("unknown mechanism '" + std::string(name) + "' (expected old, new or equal)");
}

Instance::Instance(Money budget, std::vector<FacultyRecord> faculty)
    : budget_(std::move(budget)), faculty_(std::move(faculty)) {
  if (faculty_.empty()) throw ValidationError("instance needs at least one faculty record");
}

std::vector<Money> Instance::requests() const {
  std::vector<Money> out;
  out.reserve(faculty_.size());
  for (const auto& f : faculty_) out.push_back(f.request);
  return out;
}

std::vector<Money> Instance::spends() const {
  std::vector<Money> out;
  out.reserve(faculty_.size());
  for (const auto& f : faculty_) out.push_back(f.spend);
  return out;
}

Money Instance::total_request() const {
  Money total;
  for (const auto& f : faculty_) total += f.request;
  return total;
}

Money Instance::total_spend() const {
  Money total;
  for (const auto& f : faculty_) total += f.spend;
  return total;
}

Instance Instance::with_requests(std::span<const Money> requests) const {
  if (requests.size() != faculty_.size()) {
    throw ValidationError("profile has " + std::to_string(requests.size()) + " requests for " +
                          std::to_string(faculty_.size()) + " faculty");
  }
  auto faculty = faculty_;
  for (std::size_t i = 0; i < faculty.size(); ++i) faculty[i].request = requests[i];
  return Instance(budget_, std::move(faculty));
}

Money Outcome::total_budgeted() const {
  Money total;
  for (const auto& f : faculty) total += f.budgeted;
  return total;
}

Money Outcome::total_reimbursed() const {
  Money total;
  for (const auto& f : faculty) total += f.reimbursed;
  return total;
}

std::vector<Money> allocate_proportional(const Money& budget, std::span<const Money> requests) {
  const Money total = sum(requests);
  if (total <= budget) return {requests.begin(), requests.end()};
  // B < R implies R > 0.
  const Rational share = budget.value() / total.value();
  std::vector<Money> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(r.scaled(share));
  return out;
}

std::vector<Money> allocate_proportional(const Instance& instance) {
  return allocate_proportional(instance.budget(), instance.requests());
}

std::vector<Money> allocate_equal(const Instance& instance) {
  const Money each = instance.budget().scaled(Rational(1, static_cast<unsigned long>(instance.size())));
  return std::vector<Money>(instance.size(), each);
}

Money reimburse_old(const Money& budgeted, const Money& spend) { return std::min(spend, budgeted); }

Money reimburse_new(const Money& budget, std::span<const Money> requests, std::size_t i,
                    const Money& spend) {
  if (i >= requests.size()) {
    throw ValidationError("faculty index " + std::to_string(i) + " out of range for " +
                          std::to_string(requests.size()) + " requests");
  }
  Money others;
  for (std::size_t j = 0; j < requests.size(); ++j) {
    if (j != i) others += requests[j];
  }
  return unilateral_reimbursement(Mechanism::New, budget, others, requests[i], spend, requests.size());
}

std::vector<Money> allocations(Mechanism m, const Money& budget, std::span<const Money> requests) {
  if (m == Mechanism::EqualSplit) {
    if (requests.empty()) throw ValidationError("equal split over zero faculty");
    return std::vector<Money>(requests.size(),
                              budget.scaled(Rational(1, static_cast<unsigned long>(requests.size()))));
  }
  return allocate_proportional(budget, requests);
}

std::vector<Money> reimbursements(Mechanism m, const Money& budget, std::span<const Money> requests,
                                  std::span<const Money> spends) {
  if (requests.size() != spends.size()) {
    throw ValidationError("requests and spends differ in length");
  }
  const auto budgeted = allocations(m, budget, requests);
  std::vector<Money> out;
  out.reserve(requests.size());
  if (m == Mechanism::New) {
    const Money total = sum(requests);
    const bool scarce = budget < total;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      const Money covered = std::min(spends[i], requests[i]);
      out.push_back(scarce ? covered.scaled(budget.value() / total.value()) : covered);
    }
  } else {
    for (std::size_t i = 0; i < requests.size(); ++i) out.push_back(reimburse_old(budgeted[i], spends[i]));
  }
  return out;
}

Money unilateral_reimbursement(Mechanism m, const Money& budget, const Money& others_total,
                               const Money& request, const Money& spend, std::size_t players) {
  switch (m) {
    case Mechanism::EqualSplit:
      return std::min(spend, budget.scaled(Rational(1, static_cast<unsigned long>(players))));
    case Mechanism::Old:
    case Mechanism::New: {
      const Money total = others_total + request;
      if (total <= budget) return std::min(spend, request);
      const Rational share = budget.value() / total.value();
      if (m == Mechanism::Old) return std::min(spend, request.scaled(share));
      return std::min(spend, request).scaled(share);
    }
  }
  return Money{};
}

Outcome compute_outcome(const Instance& instance, Mechanism m) {
  const auto requests = instance.requests();
  const auto spends = instance.spends();
  const auto budgeted = allocations(m, instance.budget(), requests);
  const auto paid = reimbursements(m, instance.budget(), requests, spends);

  Outcome out;
  out.faculty.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    FacultyOutcome f;
    f.budgeted = budgeted[i];
    f.reimbursed = paid[i];
    f.out_of_pocket = spends[i] - paid[i];
    f.utility = paid[i].value() - spends[i].value();
    f.proportion_paid = spends[i].is_zero() ? Proportion::one() : Proportion::of(paid[i], spends[i]);
    out.faculty.push_back(std::move(f));
  }
  return out;
}

}  // namespace travelfunds
