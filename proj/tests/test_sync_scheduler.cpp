#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <mhc/errors.hpp>
#include <mhc/sync_scheduler.hpp>

#include "test_helpers.hpp"

namespace {

const double kRoot200 = std::sqrt(200.0);

}  // namespace

TEST_CASE("prefix fill loads as much as fits and refills at the prefix end") {
  mhc::Instance inst = tf::tiny_square();
  mhc::LoadPlan plan = mhc::plan_loads({1, 2, 3}, inst);
  REQUIRE(plan.initial_load.size() == 1);
  CHECK(plan.initial_load[0] == doctest::Approx(8));
  REQUIRE(plan.refills.size() == 1);
  CHECK(plan.refills[0].position == 1);
  CHECK(plan.refills[0].node == 2);
  REQUIRE(plan.refills[0].amounts.size() == 1);
  CHECK(plan.refills[0].amounts[0] == doctest::Approx(4));
  CHECK(mhc::resupply_positions({1, 2, 3}, inst) == std::vector<int>{1});
  CHECK(mhc::count_resupply_points({1, 2, 3}, inst) == 1);
}

TEST_CASE("a route fitting the capacity needs no resupply") {
  mhc::Instance inst = tf::tiny_square();
  inst.capacity = 12;
  mhc::LoadPlan plan = mhc::plan_loads({1, 2, 3}, inst);
  CHECK(plan.initial_load[0] == doctest::Approx(12));
  CHECK(plan.refills.empty());
  CHECK(mhc::count_resupply_points({1, 2, 3}, inst) == 0);
}

TEST_CASE("capacity equal to each demand refills after every node but the last") {
  mhc::Instance inst = tf::tiny_square();
  inst.demand = {{0}, {10}, {10}, {10}};
  mhc::LoadPlan plan = mhc::plan_loads({1, 2, 3}, inst);
  CHECK(plan.initial_load[0] == doctest::Approx(10));
  REQUIRE(plan.refills.size() == 2);
  CHECK(plan.refills[0].position == 0);
  CHECK(plan.refills[0].node == 1);
  CHECK(plan.refills[0].amounts[0] == doctest::Approx(10));
  CHECK(plan.refills[1].position == 1);
  CHECK(plan.refills[1].node == 2);
}

TEST_CASE("load planning tracks products separately under a joint capacity") {
  mhc::Instance inst = tf::tiny_square();
  inst.num_products = 2;
  inst.capacity = 9;
  inst.demand = {{0, 0}, {4, 0}, {0, 5}, {4, 0}};
  mhc::LoadPlan plan = mhc::plan_loads({1, 2, 3}, inst);
  REQUIRE(plan.initial_load.size() == 2);
  CHECK(plan.initial_load[0] == doctest::Approx(4));
  CHECK(plan.initial_load[1] == doctest::Approx(5));
  REQUIRE(plan.refills.size() == 1);
  CHECK(plan.refills[0].position == 1);
  CHECK(plan.refills[0].amounts[0] == doctest::Approx(4));
  CHECK(plan.refills[0].amounts[1] == doctest::Approx(0));
}

TEST_CASE("a single node beyond capacity is unservable") {
  mhc::Instance inst = tf::tiny_square();
  inst.demand[2][0] = 11;
  CHECK_THROWS_AS(mhc::plan_loads({1, 2, 3}, inst), mhc::ValidationError);
  CHECK_THROWS_AS(mhc::resupply_positions({2}, inst), mhc::ValidationError);
}

TEST_CASE("provisional completions ignore the truck") {
  mhc::Instance inst = tf::tiny_square();
  mhc::Routes routes = {{1, 2, 3}};
  std::vector<mhc::LoadPlan> plans = {mhc::plan_loads(routes[0], inst)};
  std::vector<double> c = mhc::provisional_completion(routes, plans, inst);
  REQUIRE(c.size() == 4);
  CHECK(c[1] == doctest::Approx(10));
  CHECK(c[2] == doctest::Approx(20));
  CHECK(c[3] == doctest::Approx(32));
}

TEST_CASE("truck order breaks completion ties by route then position") {
  mhc::Instance inst;
  inst.nodes = {{0, 0, 0}, {1, 0, 5}, {2, 0, 10}, {3, 5, 0}, {4, 10, 0}};
  inst.demand = {{0}, {5}, {5}, {5}, {5}};
  inst.service_time = {0, 0, 0, 0, 0};
  auto mats = mhc::build_matrices(inst.nodes, 1.0);
  inst.mhc_travel = mats.first;
  inst.truck_travel = mats.second;
  inst.num_mhc = 2;
  inst.num_products = 1;
  inst.capacity = 5;
  inst.resupply_time = 1;
  mhc::Routes routes = {{1, 2}, {3, 4}};
  std::vector<mhc::LoadPlan> plans = {mhc::plan_loads(routes[0], inst),
                                      mhc::plan_loads(routes[1], inst)};
  std::vector<double> c = mhc::provisional_completion(routes, plans, inst);
  CHECK(c[1] == doctest::Approx(c[3]));
  CHECK(mhc::order_truck(routes, plans, c) == std::vector<int>{1, 3});
}

TEST_CASE("square fixture schedules to the known optimum") {
  mhc::Instance inst = tf::tiny_square();
  for (const std::vector<int>& route :
       {std::vector<int>{1, 2, 3}, std::vector<int>{3, 2, 1}}) {
    mhc::ScheduleResult res = mhc::schedule({route}, inst);
    const mhc::Schedule& s = res.schedule;
    CHECK(s.completion[route[0]] == doctest::Approx(10));
    CHECK(s.completion[route[1]] == doctest::Approx(20));
    CHECK(s.completion[route[2]] == doctest::Approx(32));
    CHECK(s.truck_arrival[2] == doctest::Approx(kRoot200));
    CHECK(s.mhc_wait[2] == doctest::Approx(0));
    CHECK(s.truck_wait[2] == doctest::Approx(20 - kRoot200));
    CHECK(s.latest_arrival == doctest::Approx(42));
    CHECK(s.truck_total_time == doctest::Approx(2 * kRoot200));
    CHECK(mhc::objective(s) == doctest::Approx(42 + 2 * kRoot200).epsilon(1e-12));
    CHECK(s.stabilized);
    CHECK(res.passes == 1);
    CHECK(res.solution.resupply_nodes == std::vector<int>{2});
    CHECK(res.solution.truck_route == std::vector<int>{2});
    mhc::FeasibilityReport rep = mhc::validate_solution(inst, res.solution, s);
    CHECK(rep.passed);
  }
}

TEST_CASE("truck order needs a second pass when a slow leg reshuffles completions") {
  tf::TwoPassFixture f = tf::two_pass();
  mhc::ScheduleResult res = mhc::schedule(f.routes, f.inst);
  const mhc::Schedule& s = res.schedule;
  const double root26x4 = 4 * std::sqrt(26.0);
  const double root34x4 = 4 * std::sqrt(34.0);

  CHECK(res.passes == 2);
  CHECK(s.stabilized);
  CHECK(res.solution.resupply_nodes == std::vector<int>{1, 3, 5});
  CHECK(res.solution.truck_route == std::vector<int>{1, 5, 3});

  CHECK(s.completion[1] == doctest::Approx(1));
  CHECK(s.completion[2] == doctest::Approx(6));
  CHECK(s.completion[3] == doctest::Approx(7));
  CHECK(s.completion[5] == doctest::Approx(5));
  CHECK(s.mhc_wait[1] == doctest::Approx(3));
  CHECK(s.truck_arrival[5] == doctest::Approx(5 + root26x4));
  CHECK(s.truck_wait[5] == doctest::Approx(0));
  CHECK(s.mhc_wait[5] == doctest::Approx(root26x4));
  CHECK(s.completion[6] == doctest::Approx(7 + root26x4));
  CHECK(s.truck_arrival[3] == doctest::Approx(6 + root26x4 + root34x4));
  CHECK(s.mhc_wait[3] == doctest::Approx(root26x4 + root34x4 - 1));
  CHECK(s.completion[4] == doctest::Approx(8 + root26x4 + root34x4));
  CHECK(s.latest_arrival == doctest::Approx(12 + root26x4 + root34x4));
  CHECK(s.latest_arrival == doctest::Approx(55.719885633752341));
  CHECK(s.truck_total_time == doctest::Approx(16 + root26x4 + root34x4));
  CHECK(mhc::objective(s) == doctest::Approx(115.43977126750468));

  for (int node : {1, 3, 5}) {
    CHECK(std::min(s.mhc_wait[node], s.truck_wait[node]) == doctest::Approx(0));
  }
  CHECK(mhc::validate_solution(f.inst, res.solution, s).passed);
}

TEST_CASE("without resupply the schedule is a plain makespan") {
  mhc::Instance inst = tf::random_instance(3, 10, 2, 1, 200.0);
  mhc::Rng rng(9);
  mhc::Routes routes = tf::random_routes(inst, rng);
  mhc::ScheduleResult res = mhc::schedule(routes, inst);
  CHECK(res.solution.resupply_nodes.empty());
  CHECK(res.schedule.truck_total_time == 0);
  double makespan = 0;
  for (const auto& route : routes) {
    makespan = std::max(makespan, tf::sync_free_recheck(route, inst));
  }
  CHECK(res.schedule.latest_arrival == doctest::Approx(makespan));
}

TEST_CASE("random schedules are always feasible and whoever arrives second never waits") {
  int stabilized = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    mhc::Rng rng(mhc::derive_seed(77, trial));
    int n = 4 + static_cast<int>(mhc::uniform_index(rng, 7));
    int mhcs = 1 + static_cast<int>(mhc::uniform_index(rng, 3));
    if (mhcs > n) mhcs = n;
    double capacity = 12 + 2 * static_cast<double>(mhc::uniform_index(rng, 8));
    mhc::Instance inst =
        tf::random_instance(mhc::derive_seed(78, trial), n, mhcs, 1 + trial % 2, capacity);
    mhc::Routes routes = tf::random_routes(inst, rng);

    mhc::ScheduleResult res = mhc::schedule(routes, inst);
    mhc::FeasibilityReport rep =
        mhc::validate_solution(inst, res.solution, res.schedule);
    CHECK(rep.passed);
    for (int node : res.solution.resupply_nodes) {
      CHECK(std::min(res.schedule.mhc_wait[node], res.schedule.truck_wait[node]) <=
            1e-9);
    }
    int refills = static_cast<int>(res.solution.resupply_nodes.size());
    CHECK(res.passes <= refills + 2);
    if (res.schedule.stabilized) ++stabilized;
  }
  CHECK(stabilized >= trials * 95 / 100);
}
