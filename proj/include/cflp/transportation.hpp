#pragma once

#include <cstdint>
#include <vector>

#include "cflp/instance.hpp"

namespace cflp {

// Bipartite min-cost transportation: meet every demand from the supplies at
// minimum total cost, with forbidden arcs carrying no flow. All data integral,
// costs >= 0; the optimum returned is integral.
struct TransportProblem {
  std::vector<Quantity> supply;
  std::vector<Quantity> demand;
  std::vector<double> unit_cost;   // row-major supply x demand
  std::vector<std::uint8_t> forbidden;  // same shape; empty means none

  int num_supply() const { return static_cast<int>(supply.size()); }
  int num_demand() const { return static_cast<int>(demand.size()); }
  double cost(int s, int d) const {
    return unit_cost[static_cast<std::size_t>(s) * demand.size() + static_cast<std::size_t>(d)];
  }
  bool banned(int s, int d) const {
    return !forbidden.empty() &&
           forbidden[static_cast<std::size_t>(s) * demand.size() + static_cast<std::size_t>(d)] != 0;
  }
};

struct TransportResult {
  bool feasible = false;
  double cost = 0.0;
  std::vector<Quantity> flow;  // row-major supply x demand

  Quantity flow_at(int s, int d, int num_demand) const {
    return flow[static_cast<std::size_t>(s) * static_cast<std::size_t>(num_demand) +
                static_cast<std::size_t>(d)];
  }
};

// Successive shortest paths with node potentials (Dijkstra on reduced costs).
TransportResult solve_transportation(const TransportProblem& tp);

}  // namespace cflp
