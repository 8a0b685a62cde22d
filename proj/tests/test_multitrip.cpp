#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <mhc/errors.hpp>
#include <mhc/multitrip.hpp>
#include <mhc/oracle.hpp>
#include <mhc/sync_scheduler.hpp>

#include "test_helpers.hpp"

namespace {

// Two vehicles whose first trips return 2 time units apart, with a reload
// long enough that the second arrival queues behind the first.
mhc::Instance bay_instance() {
  mhc::Instance inst;
  inst.nodes = {{0, 0, 0}, {1, 5, 0}, {2, 6, 0}, {3, 0, 6}, {4, 8, 0}};
  inst.demand = {{0}, {5}, {5}, {5}, {5}};
  inst.service_time = {0, 0, 0, 0, 0};
  auto mats = mhc::build_matrices(inst.nodes, 1.0);
  inst.mhc_travel = mats.first;
  inst.truck_travel = mats.second;
  inst.num_mhc = 2;
  inst.num_products = 1;
  inst.capacity = 5;
  inst.resupply_time = 10;
  return inst;
}

}  // namespace

TEST_CASE("trips cut at the prefix boundaries, keeping the refill node") {
  mhc::Instance inst = tf::tiny_square();
  std::vector<std::vector<int>> trips = mhc::split_trips({3, 2, 1}, inst);
  REQUIRE(trips.size() == 2);
  CHECK(trips[0] == std::vector<int>{3, 2});
  CHECK(trips[1] == std::vector<int>{1});
}

TEST_CASE("a route within capacity stays a single trip") {
  mhc::Instance inst = tf::tiny_square();
  inst.capacity = 12;
  std::vector<std::vector<int>> trips = mhc::split_trips({3, 2, 1}, inst);
  REQUIRE(trips.size() == 1);
  CHECK(trips[0] == std::vector<int>{3, 2, 1});
}

TEST_CASE("every split trip fits the vehicle") {
  for (std::uint64_t seed : {80ULL, 81ULL, 82ULL}) {
    mhc::Instance inst = tf::random_instance(seed, 14, 3, 2, 13.0);
    mhc::Rng rng(seed);
    mhc::MtSolution sol = mhc::split_all(tf::random_routes(inst, rng), inst);
    for (const auto& vehicle : sol.trips) {
      std::size_t total = 0;
      for (const auto& trip : vehicle) {
        double load = 0;
        for (int node : trip) load += inst.total_demand(node);
        CHECK(load <= inst.capacity + 1e-9);
        total += trip.size();
      }
      CHECK(total > 0);
    }
  }
}

TEST_CASE("the reload bay serves one vehicle at a time, first come first served") {
  mhc::Instance inst = bay_instance();
  mhc::MtSolution sol = mhc::split_all({{1, 2}, {3, 4}}, inst);
  REQUIRE(sol.trips[0].size() == 2);
  REQUIRE(sol.trips[1].size() == 2);
  mhc::MtSchedule sched = mhc::mt_schedule(sol, inst);

  CHECK(sched.depart[0][0] == 0);
  CHECK(sched.depart[1][0] == 0);
  CHECK(sched.finish[0][0] == doctest::Approx(10));
  CHECK(sched.finish[1][0] == doctest::Approx(12));
  CHECK(sched.depart[0][1] == doctest::Approx(20));
  CHECK(sched.reload_wait[0][1] == doctest::Approx(0));
  CHECK(sched.finish[0][1] == doctest::Approx(32));
  // Second vehicle reaches the bay at 12 and queues until 20.
  CHECK(sched.reload_wait[1][1] == doctest::Approx(8));
  CHECK(sched.depart[1][1] == doctest::Approx(30));
  CHECK(sched.finish[1][1] == doctest::Approx(46));
  CHECK(sched.latest_arrival == doctest::Approx(46));
  CHECK(sched.total_distance == doctest::Approx(50));
}

TEST_CASE("the square fixture reloads once and returns at the frozen time") {
  mhc::Instance inst = tf::tiny_square();
  mhc::MtSolution sol = mhc::split_all({{3, 2, 1}}, inst);
  mhc::MtSchedule sched = mhc::mt_schedule(sol, inst);
  const double trip0 = 20 + std::sqrt(200.0);
  CHECK(sched.finish[0][0] == doctest::Approx(trip0));
  CHECK(sched.depart[0][1] == doctest::Approx(trip0 + 2));
  CHECK(sched.latest_arrival == doctest::Approx(42 + std::sqrt(200.0)));
  CHECK(sched.latest_arrival == doctest::Approx(56.142135623730951));
  CHECK(sched.total_distance == doctest::Approx(40 + std::sqrt(200.0)));
}

TEST_CASE("hand-built trips beyond capacity are rejected") {
  mhc::Instance inst = tf::tiny_square();
  mhc::MtSolution sol;
  sol.trips = {{{1, 2, 3}}};
  CHECK_THROWS_AS(mhc::mt_schedule(sol, inst), mhc::ValidationError);
}

TEST_CASE("bay slots never overlap across vehicles") {
  for (std::uint64_t seed : {90ULL, 91ULL}) {
    mhc::Instance inst = tf::random_instance(seed, 16, 3, 1, 13.0);
    mhc::Rng rng(seed);
    mhc::MtSolution sol = mhc::split_all(tf::random_routes(inst, rng), inst);
    mhc::MtSchedule sched = mhc::mt_schedule(sol, inst);
    std::vector<std::pair<double, double>> slots;
    for (std::size_t m = 0; m < sol.trips.size(); ++m) {
      for (std::size_t t = 1; t < sol.trips[m].size(); ++t) {
        slots.push_back({sched.depart[m][t] - inst.resupply_time, sched.depart[m][t]});
        CHECK(sched.depart[m][t] >=
              sched.finish[m][t - 1] + inst.resupply_time - 1e-9);
      }
    }
    std::sort(slots.begin(), slots.end());
    for (std::size_t i = 1; i < slots.size(); ++i) {
      CHECK(slots[i].first >= slots[i - 1].second - 1e-9);
    }
  }
}

TEST_CASE("the baseline evaluator flags trip starts and bay queues") {
  mhc::Instance inst = bay_instance();
  mhc::MtEvaluator ev(inst);
  mhc::Evaluation eval = ev.evaluate({{1, 2}, {3, 4}});
  CHECK(eval.objective == doctest::Approx(46));
  CHECK_FALSE(eval.is_resupply[1]);
  CHECK(eval.is_resupply[2]);  // first stop of vehicle 0's second trip
  CHECK(eval.is_resupply[4]);
  CHECK_FALSE(eval.has_wait[2]);
  CHECK(eval.has_wait[4]);  // vehicle 1 queued before this trip
  CHECK(eval.longest_route == 1);
}

TEST_CASE("with ample capacity both models agree exactly") {
  for (std::uint64_t seed : {95ULL, 96ULL}) {
    mhc::Instance inst = tf::random_instance(seed, 12, 3, 1, 500.0);
    mhc::Rng rng(seed + 1);
    mhc::Routes routes = tf::random_routes(inst, rng);
    mhc::MtSchedule mt = mhc::mt_schedule(mhc::split_all(routes, inst), inst);
    mhc::ScheduleResult sync = mhc::schedule(routes, inst);
    CHECK(mt.latest_arrival == doctest::Approx(sync.schedule.latest_arrival));
    CHECK(mt.total_distance ==
          doctest::Approx(mhc::total_distance(sync.solution, inst)));
  }
}

TEST_CASE("the baseline search matches exhaustive enumeration on small instances") {
  for (int i = 0; i < 4; ++i) {
    int n = 5 + i % 2;
    mhc::Instance inst = tf::random_instance(mhc::derive_seed(6000, i), n, 2, 1, 12.0,
                                             static_cast<mhc::NetworkKind>(i % 3));
    double best = std::numeric_limits<double>::infinity();
    mhc::for_each_routing(n, 2, [&](const mhc::Routes& r) {
      best = std::min(best, mhc::mt_schedule(mhc::split_all(r, inst), inst).latest_arrival);
    });
    mhc::AlnsConfig cfg;
    cfg.iter_max = 2000;
    cfg.destroy_fraction_min = 0.5;
    cfg.destroy_fraction_max = 0.8;
    cfg.seed = mhc::derive_seed(41, i);
    mhc::MtRunResult run = mhc::solve_multitrip(inst, cfg);
    CHECK(run.times.latest_arrival <= best * 1.02 + 1e-9);
    CHECK(run.times.latest_arrival >= best - 1e-9);
  }
}

TEST_CASE("gap percentages follow their defining formulas") {
  mhc::GapRow row = mhc::gaps(777, 876, 554, 465);
  CHECK(row.mt_distance == 777);
  CHECK(row.sync_distance == 876);
  CHECK(row.distance_gap == doctest::Approx((876.0 - 777.0) / 777.0 * 100.0));
  CHECK(std::abs(row.distance_gap - 12.74) < 0.005);
  CHECK(row.arrival_gap == doctest::Approx((554.0 - 465.0) / 554.0 * 100.0));
  CHECK(std::abs(row.arrival_gap - 16.06) < 0.05);

  mhc::GapRow zero = mhc::gaps(100, 100, 50, 50);
  CHECK(zero.distance_gap == doctest::Approx(0));
  CHECK(zero.arrival_gap == doctest::Approx(0));
}

TEST_CASE("the head-to-head comparison produces finite gaps") {
  mhc::Instance inst = tf::random_instance(98, 10, 2, 1, 22.0);
  mhc::AlnsConfig cfg;
  cfg.iter_max = 400;
  cfg.seed = 5;
  mhc::GapRow row = mhc::compare(inst, cfg);
  CHECK(std::isfinite(row.distance_gap));
  CHECK(std::isfinite(row.arrival_gap));
  CHECK(row.mt_latest > 0);
  CHECK(row.sync_latest > 0);
  CHECK(row.mt_distance > 0);
  CHECK(row.sync_distance > 0);
}
