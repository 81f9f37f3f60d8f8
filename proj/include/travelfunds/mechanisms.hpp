#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "travelfunds/money.hpp"

namespace travelfunds {

/// Allocation rule paired with a reimbursement rule.
///
///   Old        - proportional budget (B/R) r_i, receipts reimbursed up to it.
///   New        - proportional budget, reimbursement (B/R) min(s_i, r_i).
///   EqualSplit - B/n each, receipts reimbursed up to it.
///
/// When the budget covers every request (B >= R) both proportional rules
/// budget r_i and pay min(s_i, r_i) in full.
enum class Mechanism { Old, New, EqualSplit };

std::string_view to_string(Mechanism m);
/// Accepts "old", "new", "equal".
Mechanism parse_mechanism(std::string_view name);

struct FacultyRecord {
  std::string id;
  Money request;
  Money spend;
};

class Instance {
 public:
  /// Throws ValidationError on an empty faculty list.
  Instance(Money budget, std::vector<FacultyRecord> faculty);

  const Money& budget() const noexcept { return budget_; }
  std::span<const FacultyRecord> faculty() const noexcept { return faculty_; }
  std::size_t size() const noexcept { return faculty_.size(); }

  std::vector<Money> requests() const;
  std::vector<Money> spends() const;
  Money total_request() const;
  Money total_spend() const;

  /// Same budget and spends, requests replaced. Sizes must match.
  Instance with_requests(std::span<const Money> requests) const;

 private:
  Money budget_;
  std::vector<FacultyRecord> faculty_;
};

struct FacultyOutcome {
  Money budgeted;
  Money reimbursed;
  Money out_of_pocket;
  Rational utility;
  Proportion proportion_paid;  // 1 when nothing was spent
};

struct Outcome {
  std::vector<FacultyOutcome> faculty;

  Money total_budgeted() const;
  Money total_reimbursed() const;
};

/// b_i = r_i when B >= R, otherwise (B/R) r_i. All zeros when R = 0.
std::vector<Money> allocate_proportional(const Money& budget, std::span<const Money> requests);
std::vector<Money> allocate_proportional(const Instance& instance);

std::vector<Money> allocate_equal(const Instance& instance);

/// Receipts are honored up to the budgeted amount.
Money reimburse_old(const Money& budgeted, const Money& spend);

/// (B/R) min(s_i, r_i) when B < R; min(s_i, r_i) in full otherwise.
Money reimburse_new(const Money& budget, std::span<const Money> requests, std::size_t i,
                    const Money& spend);

std::vector<Money> allocations(Mechanism m, const Money& budget, std::span<const Money> requests);

/// Reimbursement of every faculty member for a full request/spend profile.
std::vector<Money> reimbursements(Mechanism m, const Money& budget, std::span<const Money> requests,
                                  std::span<const Money> spends);

/// Reimbursement of one player given only the sum of everyone else's
/// requests. Agrees with reimbursements() entry i; `players` is only
/// consulted by EqualSplit.
Money unilateral_reimbursement(Mechanism m, const Money& budget, const Money& others_total,
                               const Money& request, const Money& spend, std::size_t players);

Outcome compute_outcome(const Instance& instance, Mechanism m);

}  // namespace travelfunds
