#include "cflp/transportation.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cflp {

namespace {

struct Edge {
  int to;
  Quantity cap;
  double cost;
  int rev;
};

class Graph {
public:
  explicit Graph(int num_nodes) : adj_(static_cast<std::size_t>(num_nodes)) {}

  void add_edge(int from, int to, Quantity cap, double cost) {
    adj_[static_cast<std::size_t>(from)].push_back(
        {to, cap, cost, static_cast<int>(adj_[static_cast<std::size_t>(to)].size())});
    adj_[static_cast<std::size_t>(to)].push_back(
        {from, 0, -cost, static_cast<int>(adj_[static_cast<std::size_t>(from)].size()) - 1});
  }

  std::vector<Edge>& operator[](int v) { return adj_[static_cast<std::size_t>(v)]; }
  int size() const { return static_cast<int>(adj_.size()); }

private:
  std::vector<std::vector<Edge>> adj_;
};

}  // namespace

TransportResult solve_transportation(const TransportProblem& tp) {
  const int ns = tp.num_supply();
  const int nd = tp.num_demand();
  const int source = ns + nd;
  const int sink = source + 1;
  Graph g(ns + nd + 2);

  for (auto s : tp.supply)
    if (s < 0) return {};
  for (int s = 0; s < ns; ++s) g.add_edge(source, s, tp.supply[static_cast<std::size_t>(s)], 0.0);
  for (int d = 0; d < nd; ++d) g.add_edge(ns + d, sink, tp.demand[static_cast<std::size_t>(d)], 0.0);
  for (int s = 0; s < ns; ++s)
    for (int d = 0; d < nd; ++d) {
      if (tp.banned(s, d)) continue;
      const Quantity cap = std::min(tp.supply[static_cast<std::size_t>(s)],
                                    tp.demand[static_cast<std::size_t>(d)]);
      if (cap <= 0) continue;
      g.add_edge(s, ns + d, cap, tp.cost(s, d));
    }

  Quantity required = 0;
  for (auto d : tp.demand) {
    if (d < 0) return {};
    required += d;
  }

  const int num_nodes = g.size();
  std::vector<double> potential(static_cast<std::size_t>(num_nodes), 0.0);
  std::vector<double> dist(static_cast<std::size_t>(num_nodes));
  std::vector<int> prev_node(static_cast<std::size_t>(num_nodes));
  std::vector<int> prev_edge(static_cast<std::size_t>(num_nodes));

  TransportResult result;
  result.flow.assign(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nd), 0);

  Quantity shipped = 0;
  double total_cost = 0.0;
  const double inf = std::numeric_limits<double>::infinity();

  while (shipped < required) {
    std::fill(dist.begin(), dist.end(), inf);
    dist[static_cast<std::size_t>(source)] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[static_cast<std::size_t>(u)]) continue;
      for (int ei = 0; ei < static_cast<int>(g[u].size()); ++ei) {
        const Edge& e = g[u][static_cast<std::size_t>(ei)];
        if (e.cap <= 0) continue;
        // clamp: rounding in the potentials must not produce negative reduced
        // costs, or Dijkstra loses its termination guarantee
        const double reduced = std::max(0.0, e.cost + potential[static_cast<std::size_t>(u)] -
                                                 potential[static_cast<std::size_t>(e.to)]);
        const double nd_cost = du + reduced;
        if (nd_cost < dist[static_cast<std::size_t>(e.to)]) {
          dist[static_cast<std::size_t>(e.to)] = nd_cost;
          prev_node[static_cast<std::size_t>(e.to)] = u;
          prev_edge[static_cast<std::size_t>(e.to)] = ei;
          heap.push({nd_cost, e.to});
        }
      }
    }
    if (dist[static_cast<std::size_t>(sink)] == inf) return {};  // infeasible

    for (int v = 0; v < num_nodes; ++v)
      if (dist[static_cast<std::size_t>(v)] < inf) potential[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];

    Quantity push = required - shipped;
    for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
      const Edge& e = g[prev_node[static_cast<std::size_t>(v)]][static_cast<std::size_t>(
          prev_edge[static_cast<std::size_t>(v)])];
      push = std::min(push, e.cap);
    }
    for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
      Edge& e = g[prev_node[static_cast<std::size_t>(v)]][static_cast<std::size_t>(
          prev_edge[static_cast<std::size_t>(v)])];
      e.cap -= push;
      g[v][static_cast<std::size_t>(e.rev)].cap += push;
      total_cost += e.cost * static_cast<double>(push);
    }
    shipped += push;
  }

  for (int s = 0; s < ns; ++s)
    for (const Edge& e : g[s]) {
      if (e.to >= ns && e.to < ns + nd) {
        // flow on a forward arc equals the residual on its reverse arc
        const Quantity f = g[e.to][static_cast<std::size_t>(e.rev)].cap;
        if (f > 0)
          result.flow[static_cast<std::size_t>(s) * static_cast<std::size_t>(nd) +
                      static_cast<std::size_t>(e.to - ns)] += f;
      }
    }
  result.feasible = true;
  result.cost = total_cost;
  return result;
}

}  // namespace cflp
