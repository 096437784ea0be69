#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cflp/instance.hpp"

namespace cflp {

struct SubFacility {
  int facility = -1;            // global id
  bool open_at_extract = false;
  Quantity frozen_load = 0;     // units committed to customers outside the fragment
  bool forced_open = false;     // frozen_load > 0: cannot close during repair
};

// A self-contained fragment handed to the repair solver: the customers whose
// whole assignment is re-decided, the facilities that may change state, loads
// frozen by outside customers, and the arcs banned by their incompatibilities.
struct SubProblem {
  std::vector<int> customers;           // global ids, ascending
  std::vector<SubFacility> facilities;  // ascending by global id

  // local customer-index pairs of incompatible fragment customers
  std::vector<std::pair<int, int>> incompat;
  // row-major |customers| x |facilities|; arc banned because the facility
  // holds a frozen customer incompatible with this one
  std::vector<std::uint8_t> forbidden;

  // shipping cost of the fragment's current assignments plus opening costs of
  // the currently-open facilities that are free to close
  double baseline_cost = 0.0;
  int open_count = 0;  // facilities tagged open at extraction
  int max_open = 0;    // cap on open facilities after repair (forced-open included)

  int num_customers() const { return static_cast<int>(customers.size()); }
  int num_facilities() const { return static_cast<int>(facilities.size()); }

  bool arc_forbidden(int local_customer, int local_facility) const {
    return forbidden[static_cast<std::size_t>(local_customer) * facilities.size() +
                     static_cast<std::size_t>(local_facility)] != 0;
  }
};

// One shipment decision inside a fragment, in sub-problem local indices.
struct FragmentArc {
  int customer = -1;  // index into SubProblem::customers
  int facility = -1;  // index into SubProblem::facilities
  Quantity quantity = 0;
};

// Whole instance wrapped as a sub-problem: every facility re-decidable and
// tagged open so the open cap never binds. Used to run the repair solver as
// a stand-alone exact solver.
SubProblem whole_instance_subproblem(const Instance& inst);

}  // namespace cflp
