#pragma once

#include <vector>

#include "cflp/instance.hpp"
#include "cflp/solution.hpp"

namespace cflp {

struct OracleResult {
  bool feasible = false;
  double cost = 0.0;
  std::vector<Shipment> shipments;  // one optimal assignment
};

// Brute-force ground truth for tiny instances (m <= 4, n <= 6; larger inputs
// are rejected). Enumerates every open set and, per open facility, every
// maximal incompatibility-free customer subset; quantities then come from a
// small self-contained min-cost-flow kept independent of the solver stack.
// Facilities that ship nothing are treated as closed.
OracleResult solve_exact(const Instance& inst);

}  // namespace cflp
