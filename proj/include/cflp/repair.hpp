#pragma once

#include <limits>
#include <vector>

#include "cflp/instance.hpp"
#include "cflp/subproblem.hpp"

namespace cflp {

// strict: only fragments costing less than the cutoff count (nodes with bound
// >= cutoff are pruned); weak: equal cost is admissible too, which lets the
// fragment structure change at no cost.
enum class CutoffMode { strict, weak };

enum class RepairStatus {
  improved,                // admissible fragment found, search ran to completion
  no_better_found,         // search ended without an admissible fragment
  timeout_with_incumbent,  // budget hit; best incumbent so far returned
  infeasible,              // proven: the sub-problem admits no assignment at all
};

struct RepairOutcome {
  RepairStatus status = RepairStatus::no_better_found;
  std::vector<FragmentArc> fragment;  // set when an incumbent exists
  double cost = 0.0;
  long nodes = 0;
  double seconds = 0.0;
  std::vector<double> incumbent_history;  // each admissible incumbent, in order

  bool has_fragment() const {
    return status == RepairStatus::improved || status == RepairStatus::timeout_with_incumbent;
  }
};

struct RepairLimits {
  double wall_seconds = std::numeric_limits<double>::infinity();
  long max_nodes = -1;  // < 0: unlimited
};

// Exact solver for one sub-problem: branch and bound over facility open/close
// decisions with a transportation relaxation (undecided facilities amortize
// their opening cost over full capacity), then arc-ban branching on violated
// incompatibilities and, when two_source is set, on customers using more than
// two facilities. Anytime: the incumbent is available whenever the budget runs
// out. Honors the sub-problem's open cap, frozen capacities and forced-open
// facilities, and never returns a fragment at or above the cutoff (strict) or
// above it (weak).
RepairOutcome solve_subproblem(const Instance& inst, const SubProblem& sp, double cutoff,
                               CutoffMode mode, bool two_source, const RepairLimits& limits);

}  // namespace cflp
