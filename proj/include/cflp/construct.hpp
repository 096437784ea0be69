#pragma once

#include <stdexcept>
#include <string>

#include "cflp/instance.hpp"
#include "cflp/solution.hpp"

namespace cflp {

// A constructor could not fully serve some customer; carries the customer id.
class ConstructError : public std::runtime_error {
public:
  ConstructError(int customer, const std::string& what)
      : std::runtime_error(what), customer_(customer) {}
  int customer() const { return customer_; }

private:
  int customer_;
};

// Opens the cheapest-opening-cost facilities until their cumulative capacity
// covers total demand, plus k extra; then serves customers in input order,
// scanning open facilities by increasing shipping cost and taking the minimum
// of remaining demand and remaining capacity, skipping facilities that already
// serve an incompatible customer. Deterministic. Throws ConstructError when a
// customer cannot be completed; a larger k may help.
Solution construct_sorted_cost(const Instance& inst, int extra_facilities = 5);

// Repeatedly assigns the facility-customer pair with the lowest amortized
// unit cost (shipping plus f_j/s_j while the facility is still closed) the
// largest quantity it can take. Deterministic; ties go to the lower facility
// index, then the lower customer index.
Solution construct_amortized_greedy(const Instance& inst);

}  // namespace cflp
