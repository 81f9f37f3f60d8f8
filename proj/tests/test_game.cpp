#include "doctest.h"
#include "support.hpp"
#include "travelfunds/errors.hpp"
#include "travelfunds/game.hpp"

using namespace travelfunds;
using testing::cents;
using testing::dollars;
using testing::make_instance;

namespace {

const Money kExploit(Rational(118'560'000, 73'800));

}  // namespace

TEST_CASE("invert_target_request") {
  CHECK(invert_target_request(dollars(1200), dollars(98800), dollars(75000)) == kExploit);
  CHECK(kExploit == Money(Rational(197600, 123)));
  CHECK(invert_target_request(Money{}, dollars(98800), dollars(75000)) == Money{});
  CHECK(invert_target_request(dollars(50), dollars(50), dollars(100)) == dollars(50));
  CHECK_THROWS_AS(invert_target_request(dollars(100), dollars(50), dollars(100)), NoFiniteSolution);
  CHECK_THROWS_AS(invert_target_request(dollars(101), dollars(50), dollars(100)), NoFiniteSolution);
  // Room in the budget: asking for the target itself is enough.
  CHECK(invert_target_request(dollars(10), dollars(20), dollars(100)) == dollars(10));
}

TEST_CASE("invert_target_request round-trips through the allocation rule") {
  testing::Generator gen(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Money budget = gen.cents_in(2, 2'000'000);
    const Money target = gen.cents_in(0, to_int64(budget.floor_cents()) - 1);
    const Money others = gen.cents_in(1, 5'000'000);
    const Money r = invert_target_request(target, others, budget);
    CHECK(allocate_proportional(budget, std::vector<Money>{r, others})[0] == target);
  }
}

TEST_CASE("best_response examples") {
  CHECK(best_response(Mechanism::New, dollars(75000), dollars(98800), dollars(1200)) ==
        BestResponse{UniqueRequest{dollars(1200)}});
  CHECK(best_response(Mechanism::Old, dollars(75000), dollars(98800), dollars(1200)) ==
        BestResponse{AnyAtLeast{kExploit}});
  CHECK(best_response(Mechanism::Old, dollars(75000), dollars(98800), dollars(75000)) == BestResponse{NoneExists{}});
  CHECK(best_response(Mechanism::Old, dollars(75000), dollars(98800), dollars(80000)) == BestResponse{NoneExists{}});
  CHECK(best_response(Mechanism::Old, dollars(75000), Money{}, dollars(80000)) ==
        BestResponse{AnyAtLeast{dollars(75000)}});
  CHECK(best_response(Mechanism::EqualSplit, dollars(10), dollars(1), dollars(5)) == BestResponse{AnyAtLeast{Money{}}});
  CHECK_THROWS_AS(best_response(Mechanism::Old, Money{}, dollars(1), dollars(1)), ValidationError);
}

TEST_CASE("old-rule threshold is the least zero out-of-pocket request") {
  testing::Generator gen(22);
  for (int trial = 0; trial < 400; ++trial) {
    const Money budget = gen.cents_in(2, 1'000'000);
    const Money others = gen.cents_in(0, 2'000'000);
    const Money spend = gen.cents_in(1, to_int64(budget.floor_cents()) - 1);
    const auto br = best_response(Mechanism::Old, budget, others, spend);
    REQUIRE(std::holds_alternative<AnyAtLeast>(br));
    const Money t = std::get<AnyAtLeast>(br).threshold;
    auto paid = [&](const Money& r) { return unilateral_reimbursement(Mechanism::Old, budget, others, r, spend, 2); };
    CHECK(paid(t) == spend);
    CHECK(paid(t + gen.cents_in(0, 1'000'000)) == spend);
    const Money below = t.scaled(Rational(999'999, 1'000'000));
    CHECK(paid(below) < spend);
  }
}

TEST_CASE("new-rule best response ignores the opponents") {
  testing::Generator gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Money budget = gen.cents_in(1, 1'000'000);
    const Money spend = gen.cents_in(0, 1'000'000);
    const auto first = best_response(Mechanism::New, budget, gen.cents_in(0, 5'000'000), spend);
    for (int k = 0; k < 5; ++k) {
      CHECK(best_response(Mechanism::New, budget, gen.cents_in(0, 5'000'000), spend) == first);
    }
  }
}

TEST_CASE("improving_deviation") {
  SUBCASE("old rule: the inflated request removes the shortfall") {
    const auto inst = testing::worked_example();
    const auto d = improving_deviation(Mechanism::Old, inst, submitted_profile(inst));
    REQUIRE(d);
    CHECK(d->player == 0);
    CHECK(d->request == kExploit);
    CHECK(d->utility_before == -300);
    CHECK(d->utility_after == 0);
  }
  SUBCASE("new rule: truthful profile has none") {
    const auto inst = testing::worked_example();
    CHECK_FALSE(improving_deviation(Mechanism::New, inst, truthful_profile(inst)));
  }
  SUBCASE("new rule: overstating is corrected to s_i") {
    const auto inst = testing::worked_example(dollars(2400), dollars(1200));
    const auto d = improving_deviation(Mechanism::New, inst, submitted_profile(inst));
    REQUIRE(d);
    CHECK(d->player == 0);
    CHECK(d->request == dollars(1200));
    CHECK(d->utility_after > d->utility_before);
  }
  SUBCASE("old rule: spending at least B doubles the request") {
    const auto inst = make_instance(dollars(100), {dollars(10), dollars(10)}, {dollars(150), dollars(5)});
    const auto d = improving_deviation(Mechanism::Old, inst, submitted_profile(inst));
    REQUIRE(d);
    CHECK(d->player == 0);
    CHECK(d->request == dollars(20));
    CHECK(d->utility_after > d->utility_before);
  }
  SUBCASE("equal split never rewards a different request") {
    const auto inst = testing::worked_example();
    CHECK_FALSE(improving_deviation(Mechanism::EqualSplit, inst, submitted_profile(inst)));
  }
  SUBCASE("misaligned profile") {
    const auto inst = testing::worked_example();
    CHECK_THROWS_AS(improving_deviation(Mechanism::Old, inst, StrategyProfile{{dollars(1)}}), ValidationError);
  }
}

TEST_CASE("deviation grid") {
  CHECK_THROWS_AS(DeviationGrid({}), ValidationError);
  CHECK_THROWS_AS(DeviationGrid({{dollars(1)}, {}}), ValidationError);
  const DeviationGrid g({{dollars(3), dollars(1), dollars(3)}});
  CHECK(g.candidates(0).size() == 2);
  CHECK(g.candidates(0)[0] == dollars(1));
  CHECK_THROWS_AS(g.candidates(1), ValidationError);

  const auto inst = testing::worked_example();
  const auto grid = default_grid(Mechanism::Old, inst, submitted_profile(inst));
  const auto c = grid.candidates(0);
  // 101 points on [0, 2400] with 1200 among them, plus the exploit threshold.
  CHECK(c.size() == 102);
  CHECK(c.front() == Money{});
  CHECK(c.back() == dollars(2400));
  CHECK(std::binary_search(c.begin(), c.end(), kExploit));
  CHECK_THROWS_AS(default_grid(Mechanism::Old, inst, submitted_profile(inst), 1), ValidationError);
}

TEST_CASE("verify_dominance") {
  const auto inst = testing::worked_example();
  std::vector<Money> span;
  for (int k = 0; k <= 100; ++k) span.push_back(dollars(30 * k));
  span.push_back(dollars(1200));
  std::vector<std::vector<Money>> sets(inst.size(), span);
  const DeviationGrid grid(sets);

  CHECK(verify_dominance(inst, 0, grid).holds);
  CHECK(verify_dominance(Mechanism::New, inst, 0, grid).holds);

  std::vector<std::vector<Money>> only_truth(inst.size(), std::vector<Money>{dollars(1200)});
  const auto vacuous = verify_dominance(inst, 0, DeviationGrid(only_truth));
  CHECK(vacuous.holds);
  CHECK_FALSE(vacuous.witness);

  CHECK_THROWS_AS(verify_dominance(Mechanism::Old, inst, 0, grid), ValidationError);
  CHECK_THROWS_AS(verify_dominance(inst, 9, grid), ValidationError);

  SUBCASE("fully funded opponents only give weak optimality") {
    const auto rich = make_instance(dollars(1000), {dollars(10), dollars(20)}, {dollars(10), dollars(20)});
    CHECK_THROWS_AS(verify_dominance(rich, 0, default_grid(Mechanism::New, rich, submitted_profile(rich))),
                    ValidationError);
  }
}

TEST_CASE("verify_nash") {
  SUBCASE("new rule, truthful") {
    const auto inst = testing::worked_example();
    const auto profile = truthful_profile(inst);
    CHECK(verify_nash(Mechanism::New, inst, profile, default_grid(Mechanism::New, inst, profile)).holds);
  }
  SUBCASE("old rule, shortfall") {
    const auto inst = testing::worked_example();
    const auto profile = submitted_profile(inst);
    const auto report = verify_nash(Mechanism::Old, inst, profile, default_grid(Mechanism::Old, inst, profile));
    CHECK_FALSE(report.holds);
    REQUIRE(report.witness);
    CHECK(report.witness->player == 0);
    CHECK(report.witness->request == kExploit);
    CHECK(report.witness->utility_after > report.witness->utility_before);
  }
  SUBCASE("fully funded singleton") {
    const auto inst = make_instance(dollars(500), {dollars(300)}, {dollars(300)});
    for (auto m : {Mechanism::Old, Mechanism::New, Mechanism::EqualSplit}) {
      const auto profile = truthful_profile(inst);
      CHECK(verify_nash(m, inst, profile, default_grid(m, inst, profile)).holds);
    }
  }
  SUBCASE("augmentation finds the threshold a coarse grid misses") {
    const auto inst = testing::worked_example();
    const auto profile = submitted_profile(inst);
    std::vector<std::vector<Money>> coarse(inst.size(), std::vector<Money>{Money{}, dollars(1200)});
    CHECK(verify_nash(Mechanism::Old, inst, profile, DeviationGrid(coarse), {.augment = false}).holds);
    CHECK_FALSE(verify_nash(Mechanism::Old, inst, profile, DeviationGrid(coarse)).holds);
  }
}

TEST_CASE("verify_no_equilibrium") {
  const auto inst = testing::worked_example();
  const std::vector<StrategyProfile> profiles{submitted_profile(inst), truthful_profile(inst)};
  const auto old_rule = verify_no_equilibrium(Mechanism::Old, inst, profiles);
  CHECK(old_rule.holds);
  CHECK(old_rule.profile_witnesses.size() == 2);
  const auto new_rule = verify_no_equilibrium(Mechanism::New, inst, profiles);
  CHECK_FALSE(new_rule.holds);
  REQUIRE(new_rule.witness_profile);
  CHECK(*new_rule.witness_profile == truthful_profile(inst));
}

TEST_CASE("run_dynamics") {
  SUBCASE("new rule settles in one round") {
    const auto inst = make_instance(dollars(50), {dollars(30), dollars(40)}, {dollars(30), dollars(40)});
    const auto report = run_dynamics(Mechanism::New, inst, StrategyProfile{{Money{}, Money{}}}, 10);
    REQUIRE(report.trace);
    CHECK(report.holds);
    CHECK(report.trace->converged_round == 1u);
    CHECK(report.trace->profiles.size() == 2);
    CHECK(report.trace->profiles.back() == truthful_profile(inst));

    const auto single = run_dynamics(Mechanism::New, inst, StrategyProfile{{Money{}, Money{}}}, 1);
    CHECK(single.trace->converged_round == 1u);
    const auto settled = run_dynamics(Mechanism::New, inst, truthful_profile(inst), 10);
    CHECK(settled.trace->converged_round == 1u);
    CHECK(settled.trace->profiles.size() == 2);
  }
  SUBCASE("old rule at the worked example escalates for 50 rounds") {
    const auto inst = testing::worked_example();
    const auto report = run_dynamics(Mechanism::Old, inst, submitted_profile(inst), 50);
    REQUIRE(report.trace);
    CHECK_FALSE(report.holds);
    CHECK_FALSE(report.trace->converged_round);
    const auto& totals = report.trace->total_request;
    CHECK(totals.size() == 51);
    for (std::size_t k = 1; k < totals.size(); ++k) CHECK(totals[k - 1] < totals[k]);
  }
  SUBCASE("old rule with enough money can settle") {
    const auto inst = make_instance(dollars(100), {dollars(30), dollars(40)}, {dollars(30), dollars(40)});
    const auto report = run_dynamics(Mechanism::Old, inst, StrategyProfile{{Money{}, Money{}}}, 50);
    CHECK(report.holds);
    CHECK(report.trace->converged_round == 1u);
    CHECK(report.trace->profiles.back() == truthful_profile(inst));
  }
  SUBCASE("spend above the budget keeps doubling") {
    const auto inst = make_instance(dollars(100), {dollars(10), dollars(10)}, {dollars(150), dollars(5)});
    const auto report = run_dynamics(Mechanism::Old, inst, submitted_profile(inst), 5);
    CHECK_FALSE(report.holds);
    CHECK(report.trace->profiles[5].requests[0] == dollars(320));
  }
  CHECK_THROWS_AS(run_dynamics(Mechanism::New, testing::worked_example(),
                               submitted_profile(testing::worked_example()), 0),
                  ValidationError);
}
