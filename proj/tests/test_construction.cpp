#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <mhc/construction.hpp>

#include "test_helpers.hpp"

namespace {

// Route costs from a hand-built table; unknown three-node routes cost 60 and
// anything else unknown trips the test. Gives full control over the
// insertion landscape.
mhc::RouteCostFn table_cost(const std::map<std::vector<int>, double>& table) {
  return [&table](const std::vector<int>& route) {
    auto it = table.find(route);
    if (it != table.end()) return it->second;
    if (route.size() >= 3) return 60.0;
    REQUIRE_MESSAGE(false, "cost asked for an unexpected route");
    return 0.0;
  };
}

}  // namespace

TEST_CASE("sync-free route cost counts travel, service and refill pauses") {
  mhc::Instance inst = tf::tiny_square();
  CHECK(mhc::sync_free_route_cost({1}, inst) == doctest::Approx(20));
  CHECK(mhc::sync_free_route_cost({2}, inst) == doctest::Approx(2 * std::sqrt(200.0)));
  CHECK(mhc::sync_free_route_cost({1, 2}, inst) ==
        doctest::Approx(20 + std::sqrt(200.0)));
  CHECK(mhc::sync_free_route_cost({3, 2, 1}, inst) == doctest::Approx(42));
  CHECK(mhc::sync_free_route_cost({}, inst) == doctest::Approx(0));
}

TEST_CASE("sync-free cost matches an independent recomputation") {
  for (std::uint64_t seed : {10ULL, 11ULL, 12ULL}) {
    mhc::Instance inst = tf::random_instance(seed, 12, 3, 2, 14.0);
    mhc::Rng rng(seed);
    for (const auto& route : tf::random_routes(inst, rng)) {
      CHECK(mhc::sync_free_route_cost(route, inst) ==
            doctest::Approx(tf::sync_free_recheck(route, inst)));
    }
  }
}

TEST_CASE("cheapest insertion on the square fixture finds the 42 route") {
  mhc::Instance inst = tf::tiny_square();
  mhc::RouteCostFn cost = [&inst](const std::vector<int>& route) {
    return mhc::sync_free_route_cost(route, inst);
  };
  mhc::Routes routes = mhc::cheapest_insertion_routes(3, 1, cost);
  REQUIRE(routes.size() == 1);
  CHECK(routes[0] == std::vector<int>{3, 2, 1});
}

TEST_CASE("construction settles the square fixture at its optimum") {
  mhc::Instance inst = tf::tiny_square();
  mhc::ScheduleResult res = mhc::initial_solution(inst, 1);
  CHECK(mhc::objective(res.schedule) == doctest::Approx(42 + 2 * std::sqrt(200.0)));
  CHECK(mhc::validate_solution(inst, res.solution, res.schedule).passed);
}

TEST_CASE("insertion cost evaluates the makespan of the modified partial") {
  mhc::Instance inst = tf::tiny_square();
  mhc::Routes partial = {{2, 1}};
  CHECK(mhc::insertion_cost(partial, 3, 0, 0, inst) == doctest::Approx(42));
  CHECK(mhc::insertion_cost(partial, 3, 0, 2, inst) ==
        doctest::Approx(20 + 2 * std::sqrt(200.0) + 2));
  CHECK_THROWS_AS(mhc::insertion_cost(partial, 3, 0, 5, inst), std::out_of_range);
  CHECK_THROWS_AS(mhc::insertion_cost(partial, 3, 2, 0, inst), std::out_of_range);
}

TEST_CASE("regret insertion escapes a trap greedy walks into") {
  // Node 3 is cheap everywhere; node 4 is cheap now but ruinous once route 0
  // fills up. Greedy grabs node 3 first and pays 50, regret sees node 4's
  // narrowing options and finishes at 12.
  std::map<std::vector<int>, double> table = {
      {{1}, 10},    {{2}, 10},    {{1, 3}, 11}, {{3, 1}, 11}, {{2, 3}, 11},
      {{3, 2}, 11}, {{1, 4}, 12}, {{4, 1}, 13}, {{2, 4}, 50}, {{4, 2}, 50}};
  mhc::RouteCostFn cost = table_cost(table);

  mhc::Routes greedy = {{1}, {2}};
  std::vector<int> pending = {3, 4};
  mhc::insert_greedy(greedy, pending, cost);
  CHECK(pending.empty());
  CHECK(greedy == mhc::Routes{{3, 1}, {4, 2}});

  for (int degree : {1, 2}) {
    mhc::Routes regret = {{1}, {2}};
    pending = {3, 4};
    mhc::insert_regret(regret, pending, degree, cost);
    CHECK(pending.empty());
    CHECK(regret == mhc::Routes{{1, 4}, {3, 2}});
  }
}

TEST_CASE("insertions never leave a route empty") {
  mhc::Instance inst = tf::tiny_square();
  mhc::RouteCostFn cost = [&inst](const std::vector<int>& route) {
    return mhc::sync_free_route_cost(route, inst);
  };
  SUBCASE("greedy, as many nodes as routes") {
    mhc::Routes routes = {{}, {}};
    std::vector<int> pending = {1, 2};
    mhc::insert_greedy(routes, pending, cost);
    CHECK(routes[0].size() == 1);
    CHECK(routes[1].size() == 1);
  }
  SUBCASE("regret, three empty routes") {
    mhc::Routes routes = {{}, {}, {}};
    std::vector<int> pending = {1, 2, 3};
    mhc::insert_regret(routes, pending, 1, cost);
    for (const auto& route : routes) CHECK(route.size() == 1);
  }
  SUBCASE("greedy fills the empty route before the cheap one") {
    mhc::Routes routes = {{3, 2, 1}, {}};
    std::vector<int> pending = {4};
    mhc::Instance bigger = tf::random_instance(1, 4, 2);
    mhc::RouteCostFn bcost = [&bigger](const std::vector<int>& route) {
      return mhc::sync_free_route_cost(route, bigger);
    };
    mhc::insert_greedy(routes, pending, bcost);
    CHECK(routes[1] == std::vector<int>{4});
  }
}

TEST_CASE("tied insertions are deterministic without an rng") {
  mhc::Instance inst = tf::tiny_square();
  mhc::RouteCostFn cost = [&inst](const std::vector<int>& route) {
    return mhc::sync_free_route_cost(route, inst);
  };
  mhc::Routes a = {{}};
  std::vector<int> pa = {1, 2, 3};
  mhc::insert_greedy(a, pa, cost);
  mhc::Routes b = {{}};
  std::vector<int> pb = {1, 2, 3};
  mhc::insert_greedy(b, pb, cost);
  CHECK(a == b);
}

TEST_CASE("an rng spreads tied insertions over the tie set") {
  mhc::Instance inst = tf::tiny_square();
  mhc::RouteCostFn cost = [&inst](const std::vector<int>& route) {
    return mhc::sync_free_route_cost(route, inst);
  };
  std::set<std::vector<int>> seen;
  mhc::Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    mhc::Routes routes = {{}};
    std::vector<int> pending = {1, 2, 3};
    mhc::insert_greedy(routes, pending, cost, &rng);
    // Both 42-cost orders of the square; nothing else is reachable through
    // cost-minimal insertions.
    CHECK((routes[0] == std::vector<int>{3, 2, 1} ||
           routes[0] == std::vector<int>{1, 2, 3}));
    seen.insert(routes[0]);
  }
  CHECK(seen.size() == 2);
}
