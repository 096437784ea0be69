#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cflp {

using Quantity = std::int64_t;

// One MS-CFLP-CI problem: n customers with integer demands, m facilities with
// integer capacities and opening costs, per-unit shipping costs, and a set of
// customer pairs that must not share a facility. Immutable after construction,
// safe for shared concurrent reads.
class Instance {
public:
  Instance(std::vector<Quantity> demands, std::vector<Quantity> capacities,
           std::vector<double> opening_costs, std::vector<double> ship_costs,
           std::vector<std::pair<int, int>> incompat_pairs);

  int num_customers() const { return n_; }
  int num_facilities() const { return m_; }

  Quantity demand(int i) const { return demands_[static_cast<std::size_t>(i)]; }
  Quantity capacity(int j) const { return capacities_[static_cast<std::size_t>(j)]; }
  double opening_cost(int j) const { return opening_costs_[static_cast<std::size_t>(j)]; }
  double ship_cost(int i, int j) const {
    return ship_costs_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) +
                       static_cast<std::size_t>(j)];
  }

  Quantity total_demand() const { return total_demand_; }
  Quantity total_capacity() const { return total_capacity_; }

  // Canonical pairs: first < second, sorted, no duplicates.
  const std::vector<std::pair<int, int>>& incompat_pairs() const { return incompat_; }
  // Sorted customer ids incompatible with i.
  const std::vector<int>& incompatible_with(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }
  bool incompatible(int i1, int i2) const;

  const std::vector<Quantity>& demands() const { return demands_; }
  const std::vector<Quantity>& capacities() const { return capacities_; }
  const std::vector<double>& opening_costs() const { return opening_costs_; }

private:
  int n_ = 0;
  int m_ = 0;
  std::vector<Quantity> demands_;
  std::vector<Quantity> capacities_;
  std::vector<double> opening_costs_;
  std::vector<double> ship_costs_;  // row-major n x m
  std::vector<std::pair<int, int>> incompat_;
  std::vector<std::vector<int>> adjacency_;
  Quantity total_demand_ = 0;
  Quantity total_capacity_ = 0;
};

bool operator==(const Instance& a, const Instance& b);

// Parse/validation failure; line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Canonical whitespace-separated text format; '#' starts a comment line.
//   m n
//   f_1 ... f_m
//   s_1 ... s_m
//   d_1 ... d_n
//   n rows of c_i1 ... c_im
//   p
//   p lines "i1 i2" (1-based customer indices)
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);

void serialize_instance(const Instance& inst, std::ostream& out);
std::string serialize_instance_text(const Instance& inst);

// Aggregate necessary condition: total capacity covers total demand. Never a
// feasibility proof; incompatibilities can still make an instance infeasible.
struct FeasibilityBound {
  Quantity total_demand = 0;
  Quantity total_capacity = 0;
  bool holds = false;
};
FeasibilityBound validate_feasibility_bound(const Instance& inst);

struct GenRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

struct GeneratorParams {
  int n = 100;
  int m = 20;
  double incompat_density = 0.0;  // fraction of all customer pairs
  GenRange demand{5, 50};
  GenRange capacity{100, 400};
  GenRange opening{200, 600};
  GenRange ship{1, 20};
};

// Deterministic for a fixed seed. Capacities are lifted uniformly until
// total capacity >= 1.2 * total demand. Costs are integer-valued doubles.
Instance generate_instance(std::uint64_t seed, const GeneratorParams& params);

}  // namespace cflp
