#pragma once

#include <vector>

#include "cflp/instance.hpp"
#include "cflp/rng.hpp"
#include "cflp/solution.hpp"
#include "cflp/subproblem.hpp"

namespace cflp {

// Average shipping cost of candidate facility f for the customer set.
double facility_quality(const Instance& inst, int facility, const std::vector<int>& customers);

// Size of a destroy step: the open-facility count a fragment of about nu
// customers corresponds to, never below one. Round half up.
int destroy_size(int nu, int num_open, int num_customers);

struct DestroySelection {
  int seed_facility = -1;
  std::vector<int> open_facilities;  // includes the seed, ascending
};

// CF: a random open facility f plus the l_open open facilities whose average
// shipping cost for f's customers is lowest.
DestroySelection destroy_cheapest_facilities(const Solution& sol, int l_open, Rng& rng);

// HC: a random open facility f; floor(l_open/2) open facilities whose own
// customers are cheapest against f's cost column, and floor(l_open/2) open
// facilities cheapest for f's most expensive customer (skipping f, that
// customer's current servers, and the first half's picks).
DestroySelection destroy_hybrid_customers(const Solution& sol, int l_open, Rng& rng);

struct ClosedSelection {
  std::vector<int> facilities;  // ascending
  bool used_min_cost = false;   // MC strategy taken this draw
};

// With probability p_mc the l_closed closed facilities of minimum quality for
// the fragment customers, otherwise a uniform sample without replacement.
ClosedSelection select_closed(const Solution& sol, const std::vector<int>& fragment_customers,
                              int l_closed, double p_mc, Rng& rng);

// Fragment customers are every customer of the selected open facilities; any
// other facility serving one of them is pulled in with its outside load
// frozen and the facility forced open.
SubProblem extract_subproblem(const Solution& sol, const std::vector<int>& open_selection,
                              const std::vector<int>& closed_selection);

}  // namespace cflp
