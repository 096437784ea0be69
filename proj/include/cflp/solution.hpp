#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cflp/instance.hpp"
#include "cflp/subproblem.hpp"

namespace cflp {

struct Shipment {
  int customer = -1;
  int facility = -1;
  Quantity quantity = 0;
};

// Objective of a bag of shipments under the convention that a facility is
// open iff it ships anything. Does not check feasibility.
double evaluate(const Instance& inst, const std::vector<Shipment>& shipments);

struct Violation {
  enum class Kind {
    demand_mismatch,
    capacity_exceeded,
    incompatible_shared_facility,
    nonpositive_quantity,
    index_inconsistency,
    cost_drift,
  };
  Kind kind;
  int customer = -1;
  int facility = -1;
  std::string detail;
};

// Feasible assignment with the auxiliary indices kept in sync: per-customer
// serving lists, per-facility customer lists and loads, open flags, and a
// cached objective maintained incrementally. A facility with no shipments is
// always closed.
class Solution {
public:
  explicit Solution(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  double cost() const { return cost_; }
  int num_open() const { return num_open_; }
  bool is_open(int j) const { return open_[static_cast<std::size_t>(j)] != 0; }
  Quantity load(int j) const { return load_[static_cast<std::size_t>(j)]; }
  Quantity residual(int j) const { return inst_->capacity(j) - load(j); }

  // ascending facility ids
  std::vector<int> open_facilities() const;
  std::vector<int> closed_facilities() const;

  // customers served by j, ascending
  const std::vector<int>& served_by(int j) const { return served_[static_cast<std::size_t>(j)]; }
  // facilities serving i, ascending, aligned with quantities(i)
  const std::vector<int>& assigned(int i) const { return assigned_[static_cast<std::size_t>(i)]; }
  const std::vector<Quantity>& quantities(int i) const { return qty_[static_cast<std::size_t>(i)]; }

  Quantity shipment(int i, int j) const;
  std::vector<Shipment> shipments() const;

  // Adds delta to (i, j); opens/closes j as its load moves from/to zero and
  // keeps the cached cost in step. delta may be negative.
  void add_shipment(int i, int j, Quantity delta);

  // Re-derives the cached cost from the shipment lists.
  double recompute_cost() const;

  // Replaces the assignments of the fragment's customers with the given arcs.
  // Rejects (and leaves the solution untouched) any fragment that breaks the
  // sub-problem contract; the reason lands in *why when provided.
  bool apply_repair(const SubProblem& sp, const std::vector<FragmentArc>& fragment,
                    std::string* why = nullptr);

private:
  const Instance* inst_;
  std::vector<std::vector<int>> assigned_;
  std::vector<std::vector<Quantity>> qty_;
  std::vector<std::vector<int>> served_;
  std::vector<Quantity> load_;
  std::vector<char> open_;
  int num_open_ = 0;
  double cost_ = 0.0;
};

// Empty iff the solution satisfies all four feasibility rules and every
// auxiliary index agrees with the shipment lists (cached cost within 1e-6
// relative of a from-scratch evaluation).
std::vector<Violation> audit(const Instance& inst, const Solution& sol);

std::string violation_to_string(const Violation& v);

// "objective" line followed by one "customer facility quantity" line per
// positive shipment, 1-based indices.
void write_solution(const Solution& sol, std::ostream& out);
Solution read_solution(const Instance& inst, std::istream& in);

}  // namespace cflp
