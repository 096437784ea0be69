#include <doctest.h>

#include <limits>

#include "cflp/construct.hpp"
#include "cflp/destroy.hpp"
#include "cflp/oracle.hpp"
#include "cflp/repair.hpp"
#include "helpers.hpp"

using namespace cflp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RepairOutcome solve_whole(const Instance& inst, CutoffMode mode = CutoffMode::weak,
                          bool two_source = false) {
  return solve_subproblem(inst, whole_instance_subproblem(inst), kInf, mode, two_source, {});
}

}  // namespace

TEST_CASE("whole 2x2 instance solves to the oracle optimum") {
  const Instance inst = test::make_2x2();
  const RepairOutcome out = solve_whole(inst);
  REQUIRE(out.status == RepairStatus::improved);
  CHECK(out.cost == 26.0);

  Solution sol(inst);
  REQUIRE(sol.apply_repair(whole_instance_subproblem(inst), out.fragment));
  CHECK(audit(inst, sol).empty());
  CHECK(sol.cost() == 26.0);
}

TEST_CASE("strict cutoff at the current cost reports no better fragment") {
  const Instance inst = test::make_2x2();
  const RepairOutcome out =
      solve_subproblem(inst, whole_instance_subproblem(inst), 26.0, CutoffMode::strict, false, {});
  CHECK(out.status == RepairStatus::no_better_found);
  CHECK_FALSE(out.has_fragment());
}

TEST_CASE("weak cutoff admits an equal-cost fragment") {
  const Instance inst = test::make_2x2();
  const RepairOutcome out =
      solve_subproblem(inst, whole_instance_subproblem(inst), 26.0, CutoffMode::weak, false, {});
  REQUIRE(out.status == RepairStatus::improved);
  CHECK(out.cost == 26.0);
}

TEST_CASE("strict cutoff below the optimum also returns nothing") {
  const Instance inst = test::make_2x2();
  const RepairOutcome out =
      solve_subproblem(inst, whole_instance_subproblem(inst), 20.0, CutoffMode::strict, false, {});
  CHECK(out.status == RepairStatus::no_better_found);
}

TEST_CASE("proven infeasibility surfaces when the cutoff is infinite") {
  const Instance inst({4, 4}, {8, 2}, {1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}, {{0, 1}});
  const RepairOutcome out = solve_whole(inst);
  CHECK(out.status == RepairStatus::infeasible);
}

TEST_CASE("two-source restriction caps servers per customer") {
  // customer 0 has demand 9; three facilities of capacity 4 make a two-source
  // assignment impossible for it unless the big facility is used
  const Instance inst({9}, {4, 4, 4, 9}, {1.0, 1.0, 1.0, 50.0}, {1.0, 1.0, 1.0, 2.0}, {});
  const RepairOutcome split = solve_whole(inst, CutoffMode::weak, false);
  REQUIRE(split.status == RepairStatus::improved);
  CHECK(split.cost == doctest::Approx(3.0 + 9.0));  // three cheap facilities

  const RepairOutcome capped = solve_whole(inst, CutoffMode::weak, true);
  REQUIRE(capped.status == RepairStatus::improved);
  std::vector<int> servers;
  for (const auto& arc : capped.fragment)
    if (arc.customer == 0) servers.push_back(arc.facility);
  CHECK(servers.size() <= 2);
  CHECK(capped.cost > split.cost);  // the cap forces the expensive facility
}

TEST_CASE("repair equals the oracle across random tiny instances") {
  GeneratorParams params;
  params.m = 4;
  params.demand = {2, 9};
  params.capacity = {5, 15};
  params.opening = {3, 30};
  params.ship = {1, 9};
  int infeasible_seen = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    params.n = 3 + static_cast<int>(seed % 4);
    params.incompat_density = (seed % 3) * 0.25;
    const Instance inst = generate_instance(seed, params);
    const OracleResult reference = solve_exact(inst);
    const RepairOutcome out = solve_whole(inst);
    if (!reference.feasible) {
      ++infeasible_seen;
      CHECK(out.status == RepairStatus::infeasible);
      continue;
    }
    REQUIRE(out.status == RepairStatus::improved);
    CHECK(out.cost == reference.cost);  // integral data: exact agreement
  }
  (void)infeasible_seen;
}

TEST_CASE("incumbent history never increases") {
  GeneratorParams params;
  params.n = 12;
  params.m = 6;
  params.incompat_density = 0.2;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = generate_instance(seed, params);
    const RepairOutcome out = solve_whole(inst);
    for (std::size_t k = 1; k < out.incumbent_history.size(); ++k)
      CHECK(out.incumbent_history[k] < out.incumbent_history[k - 1]);
  }
}

TEST_CASE("node budget truncates the search but keeps an incumbent when found") {
  GeneratorParams params;
  params.n = 30;
  params.m = 10;
  params.incompat_density = 0.1;
  const Instance inst = generate_instance(5, params);
  RepairLimits limits;
  limits.max_nodes = 40;
  const RepairOutcome out =
      solve_subproblem(inst, whole_instance_subproblem(inst), kInf, CutoffMode::weak, false, limits);
  CHECK(out.nodes <= 40);
  if (out.has_fragment()) {
    CHECK(out.status == RepairStatus::timeout_with_incumbent);
    Solution sol(inst);
    REQUIRE(sol.apply_repair(whole_instance_subproblem(inst), out.fragment));
    CHECK(audit(inst, sol).empty());
  } else {
    CHECK(out.status == RepairStatus::no_better_found);
  }
}

TEST_CASE("destroy-repair cycles keep the solution audit-clean and honor the open cap") {
  GeneratorParams params;
  params.n = 40;
  params.m = 12;
  params.incompat_density = 0.08;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Instance inst = generate_instance(seed, params);
    Solution sol = construct_sorted_cost(inst, 5);
    REQUIRE(audit(inst, sol).empty());
    Rng rng(seed * 77);

    for (int cycle = 0; cycle < 12; ++cycle) {
      const int l_open = destroy_size(65, sol.num_open(), inst.num_customers());
      const auto sel = cycle % 2 == 0 ? destroy_cheapest_facilities(sol, l_open, rng)
                                      : destroy_hybrid_customers(sol, l_open, rng);
      std::vector<int> customers;
      for (int f : sel.open_facilities) {
        const auto& served = sol.served_by(f);
        customers.insert(customers.end(), served.begin(), served.end());
      }
      std::sort(customers.begin(), customers.end());
      customers.erase(std::unique(customers.begin(), customers.end()), customers.end());
      const auto closed = select_closed(sol, customers, 4, 0.44, rng);
      const SubProblem sp = extract_subproblem(sol, sel.open_facilities, closed.facilities);

      RepairLimits limits;
      limits.max_nodes = 3000;
      const RepairOutcome out =
          solve_subproblem(inst, sp, sp.baseline_cost, CutoffMode::weak, false, limits);
      if (!out.has_fragment()) continue;
      CHECK(out.cost <= sp.baseline_cost);

      // the fragment opens at most o+2 facilities, forced-open included
      std::vector<char> ships(static_cast<std::size_t>(sp.num_facilities()), 0);
      for (const auto& arc : out.fragment) ships[static_cast<std::size_t>(arc.facility)] = 1;
      int opened = 0;
      for (int f = 0; f < sp.num_facilities(); ++f)
        if (ships[static_cast<std::size_t>(f)] || sp.facilities[static_cast<std::size_t>(f)].forced_open)
          ++opened;
      CHECK(opened <= sp.max_open);

      const double before = sol.cost();
      std::string why;
      REQUIRE_MESSAGE(sol.apply_repair(sp, out.fragment, &why), why);
      CHECK(audit(inst, sol).empty());
      CHECK(sol.cost() <= before + 1e-9);
    }
  }
}
