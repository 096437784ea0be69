#include <doctest.h>

#include <limits>

#include "cflp/rng.hpp"
#include "cflp/transportation.hpp"

using namespace cflp;

namespace {

// Independent check: enumerate every integral flow recursively.
double brute_force_min_cost(const TransportProblem& tp) {
  const int ns = tp.num_supply();
  const int nd = tp.num_demand();
  std::vector<Quantity> left(tp.supply);
  double best = std::numeric_limits<double>::infinity();

  const auto recurse = [&](auto&& self, int d, Quantity remaining, int s, double cost) -> void {
    if (cost >= best) return;
    if (d == nd) {
      best = cost;
      return;
    }
    if (remaining == 0) {
      const Quantity next = d + 1 < nd ? tp.demand[static_cast<std::size_t>(d + 1)] : 0;
      self(self, d + 1, next, 0, cost);
      return;
    }
    if (s == ns) return;
    const Quantity most = tp.banned(s, d) ? 0 : std::min(left[static_cast<std::size_t>(s)], remaining);
    for (Quantity q = 0; q <= most; ++q) {
      left[static_cast<std::size_t>(s)] -= q;
      self(self, d, remaining - q, s + 1, cost + tp.cost(s, d) * static_cast<double>(q));
      left[static_cast<std::size_t>(s)] += q;
    }
  };
  recurse(recurse, 0, nd > 0 ? tp.demand[0] : 0, 0, 0.0);
  return best;
}

}  // namespace

TEST_CASE("single arc ships the demand") {
  TransportProblem tp;
  tp.supply = {5};
  tp.demand = {3};
  tp.unit_cost = {2.0};
  const auto r = solve_transportation(tp);
  REQUIRE(r.feasible);
  CHECK(r.cost == 6.0);
  CHECK(r.flow_at(0, 0, 1) == 3);
}

TEST_CASE("2x2 diagonal optimum") {
  TransportProblem tp;
  tp.supply = {5, 5};
  tp.demand = {3, 3};
  tp.unit_cost = {1.0, 2.0, 2.0, 1.0};
  const auto r = solve_transportation(tp);
  REQUIRE(r.feasible);
  CHECK(r.cost == 6.0);
  CHECK(r.flow_at(0, 0, 2) == 3);
  CHECK(r.flow_at(1, 1, 2) == 3);
}

TEST_CASE("forbidden arc can make demand unreachable") {
  TransportProblem tp;
  tp.supply = {5};
  tp.demand = {3};
  tp.unit_cost = {2.0};
  tp.forbidden = {1};
  CHECK_FALSE(solve_transportation(tp).feasible);
}

TEST_CASE("insufficient supply is infeasible") {
  TransportProblem tp;
  tp.supply = {2};
  tp.demand = {3};
  tp.unit_cost = {1.0};
  CHECK_FALSE(solve_transportation(tp).feasible);
}

TEST_CASE("random instances match exhaustive enumeration") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    TransportProblem tp;
    const int ns = 1 + static_cast<int>(rng.below(3));
    const int nd = 1 + static_cast<int>(rng.below(3));
    tp.supply.resize(static_cast<std::size_t>(ns));
    tp.demand.resize(static_cast<std::size_t>(nd));
    for (auto& s : tp.supply) s = rng.between(0, 6);
    for (auto& d : tp.demand) d = rng.between(0, 4);
    tp.unit_cost.resize(static_cast<std::size_t>(ns * nd));
    tp.forbidden.resize(static_cast<std::size_t>(ns * nd));
    for (auto& c : tp.unit_cost) c = static_cast<double>(rng.between(0, 9));
    for (auto& b : tp.forbidden) b = rng.unit() < 0.2 ? 1 : 0;

    const double expected = brute_force_min_cost(tp);
    const auto r = solve_transportation(tp);
    if (expected == std::numeric_limits<double>::infinity()) {
      CHECK_FALSE(r.feasible);
    } else {
      REQUIRE(r.feasible);
      CHECK(r.cost == doctest::Approx(expected).epsilon(1e-12));
      // flows respect all constraints
      for (int s = 0; s < ns; ++s) {
        Quantity used = 0;
        for (int d = 0; d < nd; ++d) {
          const Quantity f = r.flow_at(s, d, nd);
          CHECK(f >= 0);
          if (tp.banned(s, d)) CHECK(f == 0);
          used += f;
        }
        CHECK(used <= tp.supply[static_cast<std::size_t>(s)]);
      }
      for (int d = 0; d < nd; ++d) {
        Quantity got = 0;
        for (int s = 0; s < ns; ++s) got += r.flow_at(s, d, nd);
        CHECK(got == tp.demand[static_cast<std::size_t>(d)]);
      }
    }
  }
}
