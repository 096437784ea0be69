#include "cflp/construct.hpp"

#include <algorithm>
#include <numeric>

namespace cflp {

namespace {

bool serves_incompatible(const Instance& inst, const Solution& sol, int i, int j) {
  const auto& served = sol.served_by(j);
  const auto& enemies = inst.incompatible_with(i);
  if (served.empty() || enemies.empty()) return false;
  // both sorted; walk the shorter list
  for (int e : enemies)
    if (std::binary_search(served.begin(), served.end(), e)) return true;
  return false;
}

}  // namespace

Solution construct_sorted_cost(const Instance& inst, int extra_facilities) {
  const int n = inst.num_customers();
  const int m = inst.num_facilities();

  std::vector<int> by_opening(static_cast<std::size_t>(m));
  std::iota(by_opening.begin(), by_opening.end(), 0);
  std::stable_sort(by_opening.begin(), by_opening.end(), [&](int a, int b) {
    return inst.opening_cost(a) < inst.opening_cost(b);
  });

  Quantity cumulative = 0;
  std::size_t take = 0;
  while (take < by_opening.size() && cumulative < inst.total_demand())
    cumulative += inst.capacity(by_opening[take++]);
  take = std::min(by_opening.size(), take + static_cast<std::size_t>(std::max(0, extra_facilities)));

  std::vector<int> open(by_opening.begin(), by_opening.begin() + static_cast<std::ptrdiff_t>(take));
  std::sort(open.begin(), open.end());

  Solution sol(inst);
  for (int i = 0; i < n; ++i) {
    std::vector<int> order(open);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.ship_cost(i, a) < inst.ship_cost(i, b); });
    Quantity remaining = inst.demand(i);
    for (int j : order) {
      if (remaining == 0) break;
      const Quantity free = sol.residual(j);
      if (free <= 0) continue;
      if (serves_incompatible(inst, sol, i, j)) continue;
      const Quantity q = std::min(remaining, free);
      sol.add_shipment(i, j, q);
      remaining -= q;
    }
    if (remaining > 0)
      throw ConstructError(i, "sorted-cost construction cannot complete customer " +
                                  std::to_string(i + 1) + "; " + std::to_string(remaining) +
                                  " units unserved (k=" + std::to_string(extra_facilities) + ")");
  }
  return sol;
}

Solution construct_amortized_greedy(const Instance& inst) {
  const int n = inst.num_customers();
  const int m = inst.num_facilities();

  Solution sol(inst);
  std::vector<Quantity> remaining(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = inst.demand(i);
  Quantity outstanding = inst.total_demand();

  while (outstanding > 0) {
    int best_i = -1, best_j = -1;
    double best_cost = 0.0;
    for (int j = 0; j < m; ++j) {
      if (sol.residual(j) <= 0) continue;
      const double amortized =
          sol.is_open(j) ? 0.0
                         : inst.opening_cost(j) / static_cast<double>(inst.capacity(j));
      for (int i = 0; i < n; ++i) {
        if (remaining[static_cast<std::size_t>(i)] == 0) continue;
        if (serves_incompatible(inst, sol, i, j)) continue;
        const double cost = inst.ship_cost(i, j) + amortized;
        if (best_j < 0 || cost < best_cost) {
          best_cost = cost;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_j < 0) {
      int stuck = 0;
      while (remaining[static_cast<std::size_t>(stuck)] == 0) ++stuck;
      throw ConstructError(stuck, "amortized greedy cannot complete customer " +
                                      std::to_string(stuck + 1) + "; " +
                                      std::to_string(remaining[static_cast<std::size_t>(stuck)]) +
                                      " units unserved");
    }
    const Quantity q = std::min(remaining[static_cast<std::size_t>(best_i)], sol.residual(best_j));
    sol.add_shipment(best_i, best_j, q);
    remaining[static_cast<std::size_t>(best_i)] -= q;
    outstanding -= q;
  }
  return sol;
}

}  // namespace cflp
