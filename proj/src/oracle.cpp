#include "cflp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cflp {

namespace {

constexpr int kMaxFacilities = 4;
constexpr int kMaxCustomers = 6;

// Min-cost flow by repeated Bellman-Ford augmentation. Deliberately written
// apart from the transportation engine so the two can check each other.
class SimpleFlow {
public:
  explicit SimpleFlow(int nodes) : nodes_(nodes) {}

  void add(int from, int to, Quantity cap, double cost) {
    edge(from, to, cap, cost);
    edge(to, from, 0, -cost);
  }

  // Sends `want` units source -> sink; returns pair(sent, cost).
  std::pair<Quantity, double> run(int source, int sink, Quantity want) {
    Quantity sent = 0;
    double total = 0.0;
    while (sent < want) {
      std::vector<double> dist(static_cast<std::size_t>(nodes_), std::numeric_limits<double>::infinity());
      std::vector<int> via(static_cast<std::size_t>(nodes_), -1);
      dist[static_cast<std::size_t>(source)] = 0.0;
      bool changed = true;
      while (changed) {
        changed = false;
        for (int e = 0; e < static_cast<int>(to_.size()); ++e) {
          if (cap_[static_cast<std::size_t>(e)] <= 0) continue;
          const int u = from_[static_cast<std::size_t>(e)];
          const int v = to_[static_cast<std::size_t>(e)];
          if (dist[static_cast<std::size_t>(u)] + cost_[static_cast<std::size_t>(e)] <
              dist[static_cast<std::size_t>(v)] - 1e-12) {
            dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + cost_[static_cast<std::size_t>(e)];
            via[static_cast<std::size_t>(v)] = e;
            changed = true;
          }
        }
      }
      if (via[static_cast<std::size_t>(sink)] < 0) break;
      Quantity push = want - sent;
      for (int v = sink; v != source;) {
        const int e = via[static_cast<std::size_t>(v)];
        push = std::min(push, cap_[static_cast<std::size_t>(e)]);
        v = from_[static_cast<std::size_t>(e)];
      }
      for (int v = sink; v != source;) {
        const int e = via[static_cast<std::size_t>(v)];
        cap_[static_cast<std::size_t>(e)] -= push;
        cap_[static_cast<std::size_t>(e ^ 1)] += push;
        total += cost_[static_cast<std::size_t>(e)] * static_cast<double>(push);
        v = from_[static_cast<std::size_t>(e)];
      }
      sent += push;
    }
    return {sent, total};
  }

  Quantity flow_on(int edge_id) const { return cap_[static_cast<std::size_t>(edge_id ^ 1)]; }

private:
  void edge(int from, int to, Quantity cap, double cost) {
    from_.push_back(from);
    to_.push_back(to);
    cap_.push_back(cap);
    cost_.push_back(cost);
  }

  int nodes_;
  std::vector<int> from_, to_;
  std::vector<Quantity> cap_;
  std::vector<double> cost_;
};

// All maximal subsets of {0..n-1} containing no incompatible pair.
std::vector<unsigned> maximal_independent_masks(const Instance& inst) {
  const int n = inst.num_customers();
  std::vector<unsigned> independent;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& [a, b] : inst.incompat_pairs())
      if ((mask >> a & 1u) && (mask >> b & 1u)) {
        ok = false;
        break;
      }
    if (ok) independent.push_back(mask);
  }
  std::vector<unsigned> maximal;
  for (unsigned mask : independent) {
    bool dominated = false;
    for (unsigned other : independent)
      if (other != mask && (other & mask) == mask) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(mask);
  }
  return maximal;
}

}  // namespace

OracleResult solve_exact(const Instance& inst) {
  const int n = inst.num_customers();
  const int m = inst.num_facilities();
  if (m > kMaxFacilities || n > kMaxCustomers)
    throw std::invalid_argument("oracle accepts at most 4 facilities and 6 customers");

  const std::vector<unsigned> masks = maximal_independent_masks(inst);
  const Quantity total_demand = inst.total_demand();

  OracleResult best;
  double best_cost = std::numeric_limits<double>::infinity();

  std::vector<unsigned> chosen(static_cast<std::size_t>(m), 0);
  for (unsigned open = 1; open < (1u << m); ++open) {
    Quantity open_capacity = 0;
    for (int j = 0; j < m; ++j)
      if (open >> j & 1u) open_capacity += inst.capacity(j);
    if (open_capacity < total_demand) continue;

    std::vector<int> open_list;
    for (int j = 0; j < m; ++j)
      if (open >> j & 1u) open_list.push_back(j);

    // one maximal allowed-customer mask per open facility
    const auto combos = [&](auto&& self, std::size_t pos) -> void {
      if (pos == open_list.size()) {
        const int source = n + m;
        const int sink = source + 1;
        SimpleFlow flow(n + m + 2);
        std::vector<std::vector<int>> arc_edge(static_cast<std::size_t>(m),
                                               std::vector<int>(static_cast<std::size_t>(n), -1));
        int next_edge = 0;
        for (std::size_t k = 0; k < open_list.size(); ++k) {
          flow.add(source, n + open_list[k], inst.capacity(open_list[k]), 0.0);
          next_edge += 2;
        }
        for (int i = 0; i < n; ++i) {
          flow.add(i, sink, inst.demand(i), 0.0);
          next_edge += 2;
        }
        for (std::size_t k = 0; k < open_list.size(); ++k) {
          const int j = open_list[k];
          const unsigned mask = chosen[static_cast<std::size_t>(j)];
          for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            flow.add(n + j, i, std::min(inst.capacity(j), inst.demand(i)), inst.ship_cost(i, j));
            arc_edge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = next_edge;
            next_edge += 2;
          }
        }
        const auto [sent, shipping] = flow.run(source, sink, total_demand);
        if (sent != total_demand) return;

        std::vector<Shipment> ship;
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < n; ++i) {
            const int e = arc_edge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (e < 0) continue;
            const Quantity q = flow.flow_on(e);
            if (q > 0) ship.push_back({i, j, q});
          }
        const double cost = evaluate(inst, ship);  // idle open facilities count as closed
        if (cost < best_cost) {
          best_cost = cost;
          best.feasible = true;
          best.cost = cost;
          best.shipments = std::move(ship);
        }
        return;
      }
      for (unsigned mask : masks) {
        chosen[static_cast<std::size_t>(open_list[pos])] = mask;
        self(self, pos + 1);
      }
    };
    combos(combos, 0);
  }

  return best;
}

}  // namespace cflp
