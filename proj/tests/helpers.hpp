#pragma once

#include <utility>
#include <vector>

#include "cflp/instance.hpp"
#include "cflp/solution.hpp"

namespace cflp::test {

// f=[10,10], s=[5,5], d=[3,3], c=[[1,2],[2,1]]; optimum 26 = diag assignment.
inline Instance make_2x2(std::vector<std::pair<int, int>> incompat = {}) {
  return Instance({3, 3}, {5, 5}, {10.0, 10.0}, {1.0, 2.0, 2.0, 1.0}, std::move(incompat));
}

inline Solution solution_from(const Instance& inst, const std::vector<Shipment>& shipments) {
  Solution sol(inst);
  for (const auto& s : shipments) sol.add_shipment(s.customer, s.facility, s.quantity);
  return sol;
}

}  // namespace cflp::test
