#include "cflp/repair.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <queue>

#include "cflp/transportation.hpp"

namespace cflp {

namespace {

enum : std::int8_t { kUndecided = 0, kOpen = 1, kClosed = 2 };

struct Ban {
  std::int16_t customer;
  std::int16_t facility;
};

struct Node {
  double bound = 0.0;  // inherited lower bound; re-solved on pop
  long id = 0;
  int open_fixed = 0;
  std::vector<std::int8_t> state;
  std::vector<Ban> bans;
};

struct NodeOrder {
  // best bound first; ties go depth-first (most recent node)
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id < b.id;
  }
};

class Clock {
public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

RepairOutcome solve_subproblem(const Instance& inst, const SubProblem& sp, double cutoff,
                               CutoffMode mode, bool two_source, const RepairLimits& limits) {
  const Clock clock;
  RepairOutcome out;

  const int nc = sp.num_customers();
  const int nf = sp.num_facilities();

  const auto cutoff_pruned = [&](double bound) {
    return mode == CutoffMode::strict ? bound >= cutoff : bound > cutoff;
  };

  double incumbent_cost = std::numeric_limits<double>::infinity();
  bool have_incumbent = false;
  std::vector<FragmentArc> incumbent;

  if (nc == 0) {
    // nothing to re-decide; the empty fragment costs nothing
    out.status = cutoff_pruned(0.0) ? RepairStatus::no_better_found : RepairStatus::improved;
    out.cost = 0.0;
    out.seconds = clock.seconds();
    if (out.status == RepairStatus::improved) out.incumbent_history.push_back(0.0);
    return out;
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  long next_id = 0;
  bool complete = true;  // false once the budget or the queue guard kicks in

  // plunging: the preferred child is processed immediately so the search
  // reaches leaves (and incumbents) early; siblings wait in the queue
  std::vector<Node> carried;

  {
    Node root;
    root.id = next_id++;
    root.state.assign(static_cast<std::size_t>(nf), kUndecided);
    for (int f = 0; f < nf; ++f)
      if (sp.facilities[static_cast<std::size_t>(f)].forced_open) {
        root.state[static_cast<std::size_t>(f)] = kOpen;
        ++root.open_fixed;
      }
    root.bound = 0.0;
    queue.push(std::move(root));
  }

  // scratch buffers reused across nodes
  std::vector<std::uint8_t> banned(static_cast<std::size_t>(nc) * static_cast<std::size_t>(nf));
  TransportProblem tp;
  tp.demand.resize(static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c)
    tp.demand[static_cast<std::size_t>(c)] = inst.demand(sp.customers[static_cast<std::size_t>(c)]);

  while (!carried.empty() || !queue.empty()) {
    if (limits.max_nodes >= 0 && out.nodes >= limits.max_nodes) {
      complete = false;
      break;
    }
    if (clock.seconds() > limits.wall_seconds) {
      complete = false;
      break;
    }
    if (queue.size() > 4'000'000) {  // memory guard; forfeits the optimality claim
      complete = false;
      break;
    }

    Node node = [&] {
      if (!carried.empty()) {
        Node n = std::move(carried.back());
        carried.pop_back();
        return n;
      }
      Node n = queue.top();
      queue.pop();
      return n;
    }();
    ++out.nodes;

    const double prune_at = std::min(incumbent_cost, std::numeric_limits<double>::infinity());
    if (node.bound >= prune_at || cutoff_pruned(node.bound)) continue;

    // node relaxation: transportation over non-closed facilities, opening
    // costs amortized per unit while a facility is undecided
    banned.assign(banned.size(), 0);
    for (std::size_t k = 0; k < sp.forbidden.size(); ++k) banned[k] = sp.forbidden[k];
    for (const Ban& b : node.bans)
      banned[static_cast<std::size_t>(b.customer) * static_cast<std::size_t>(nf) +
             static_cast<std::size_t>(b.facility)] = 1;

    const bool cap_reached = node.open_fixed >= sp.max_open;
    std::vector<int> active;  // local facility ids with supply in this relaxation
    active.reserve(static_cast<std::size_t>(nf));
    for (int f = 0; f < nf; ++f) {
      const auto st = node.state[static_cast<std::size_t>(f)];
      if (st == kClosed) continue;
      if (st == kUndecided && cap_reached) continue;
      active.push_back(f);
    }

    const int na = static_cast<int>(active.size());
    tp.supply.assign(static_cast<std::size_t>(na), 0);
    tp.unit_cost.assign(static_cast<std::size_t>(na) * static_cast<std::size_t>(nc), 0.0);
    tp.forbidden.assign(static_cast<std::size_t>(na) * static_cast<std::size_t>(nc), 0);

    double fixed_openings = 0.0;
    for (int a = 0; a < na; ++a) {
      const int f = active[static_cast<std::size_t>(a)];
      const auto& sub = sp.facilities[static_cast<std::size_t>(f)];
      tp.supply[static_cast<std::size_t>(a)] = inst.capacity(sub.facility) - sub.frozen_load;
      const bool undecided = node.state[static_cast<std::size_t>(f)] == kUndecided;
      const double amortized =
          undecided ? inst.opening_cost(sub.facility) / static_cast<double>(inst.capacity(sub.facility))
                    : 0.0;
      if (!undecided && !sub.forced_open) fixed_openings += inst.opening_cost(sub.facility);
      for (int c = 0; c < nc; ++c) {
        const std::size_t at =
            static_cast<std::size_t>(a) * static_cast<std::size_t>(nc) + static_cast<std::size_t>(c);
        tp.unit_cost[at] =
            inst.ship_cost(sp.customers[static_cast<std::size_t>(c)], sub.facility) + amortized;
        tp.forbidden[at] = banned[static_cast<std::size_t>(c) * static_cast<std::size_t>(nf) +
                                  static_cast<std::size_t>(f)];
      }
    }

    const TransportResult relax = solve_transportation(tp);
    if (!relax.feasible) continue;  // no assignment in this subtree
    const double bound = fixed_openings + relax.cost;
    if (bound >= prune_at || cutoff_pruned(bound)) continue;

    // branch on the undecided facility with the largest utilization
    int branch_f = -1;
    double best_util = 0.0;
    for (int a = 0; a < na; ++a) {
      const int f = active[static_cast<std::size_t>(a)];
      if (node.state[static_cast<std::size_t>(f)] != kUndecided) continue;
      Quantity used = 0;
      for (int c = 0; c < nc; ++c) used += relax.flow_at(a, c, nc);
      if (used <= 0) continue;
      const double util = static_cast<double>(used) /
                          static_cast<double>(tp.supply[static_cast<std::size_t>(a)]);
      if (branch_f < 0 || util > best_util) {
        best_util = util;
        branch_f = f;
      }
    }

    if (branch_f >= 0) {
      Node closed = node;
      closed.id = next_id++;
      closed.bound = bound;
      closed.state[static_cast<std::size_t>(branch_f)] = kClosed;

      if (node.open_fixed + 1 <= sp.max_open) {
        Node opened = std::move(node);
        opened.id = next_id++;
        opened.bound = bound;
        opened.state[static_cast<std::size_t>(branch_f)] = kOpen;
        ++opened.open_fixed;
        queue.push(std::move(closed));
        carried.push_back(std::move(opened));  // dive where the flow already is
      } else {
        carried.push_back(std::move(closed));
      }
      continue;
    }

    // all flow sits on fixed-open facilities: the relaxation is exact here.
    // look for a violated incompatibility, then a two-source violation
    int viol_c1 = -1, viol_c2 = -1, viol_f = -1;
    for (const auto& [c1, c2] : sp.incompat) {
      for (int a = 0; a < na; ++a) {
        if (relax.flow_at(a, c1, nc) > 0 && relax.flow_at(a, c2, nc) > 0) {
          viol_c1 = c1;
          viol_c2 = c2;
          viol_f = active[static_cast<std::size_t>(a)];
          break;
        }
      }
      if (viol_f >= 0) break;
    }
    if (viol_f >= 0) {
      for (int which = 0; which < 2; ++which) {
        Node child = node;
        child.id = next_id++;
        child.bound = bound;
        child.bans.push_back({static_cast<std::int16_t>(which == 0 ? viol_c1 : viol_c2),
                              static_cast<std::int16_t>(viol_f)});
        if (which == 0)
          carried.push_back(std::move(child));
        else
          queue.push(std::move(child));
      }
      continue;
    }

    if (two_source) {
      int viol_c = -1;
      std::vector<int> servers;
      for (int c = 0; c < nc && viol_c < 0; ++c) {
        servers.clear();
        for (int a = 0; a < na; ++a)
          if (relax.flow_at(a, c, nc) > 0) servers.push_back(active[static_cast<std::size_t>(a)]);
        if (static_cast<int>(servers.size()) > 2) viol_c = c;
      }
      if (viol_c >= 0) {
        // any two-source assignment leaves at least one of these arcs unused
        for (std::size_t k = 0; k < servers.size(); ++k) {
          Node child = node;
          child.id = next_id++;
          child.bound = bound;
          child.bans.push_back(
              {static_cast<std::int16_t>(viol_c), static_cast<std::int16_t>(servers[k])});
          if (k == 0)
            carried.push_back(std::move(child));
          else
            queue.push(std::move(child));
        }
        continue;
      }
    }

    // feasible for the sub-problem; bound is its exact cost
    if (!cutoff_pruned(bound) && bound < incumbent_cost) {
      incumbent_cost = bound;
      have_incumbent = true;
      incumbent.clear();
      for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c) {
          const Quantity q = relax.flow_at(a, c, nc);
          if (q > 0) incumbent.push_back({c, active[static_cast<std::size_t>(a)], q});
        }
      out.incumbent_history.push_back(bound);
    }
  }

  out.seconds = clock.seconds();
  if (have_incumbent) {
    out.fragment = std::move(incumbent);
    out.cost = incumbent_cost;
    out.status = complete ? RepairStatus::improved : RepairStatus::timeout_with_incumbent;
  } else if (complete && cutoff == std::numeric_limits<double>::infinity()) {
    out.status = RepairStatus::infeasible;
  } else {
    out.status = RepairStatus::no_better_found;
  }
  return out;
}

}  // namespace cflp
