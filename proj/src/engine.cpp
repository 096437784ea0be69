#include "cflp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cflp/destroy.hpp"

namespace cflp {

Profile default_profile(int num_facilities) {
  if (num_facilities <= 700) return {65, 9, 0.44, 0.34};
  return {35, 6, 0.45, 0.35};
}

double resolve_timeout(const TimeoutRule& rule, int num_facilities) {
  switch (rule.kind) {
    case TimeoutRule::Kind::short_rule:
      return 10.0 * std::sqrt(static_cast<double>(num_facilities));
    case TimeoutRule::Kind::long_rule:
      return static_cast<double>(num_facilities);
    case TimeoutRule::Kind::explicit_seconds:
      return rule.seconds;
  }
  return 0.0;
}

int select_operator(const OperatorStats& stats, Rng& rng) {
  if (stats.weight.empty()) throw std::logic_error("operator roulette needs at least one operator");
  double total = 0.0;
  for (double w : stats.weight) total += w;
  const double draw = rng.unit() * total;
  double acc = 0.0;
  for (std::size_t d = 0; d < stats.weight.size(); ++d) {
    acc += stats.weight[d];
    if (draw < acc) return static_cast<int>(d);
  }
  return static_cast<int>(stats.weight.size()) - 1;
}

double updated_weight(double weight, double lambda, double cum_improvements, double cum_seconds) {
  const double ratio = cum_seconds > 0.0 ? cum_improvements / cum_seconds : 0.0;
  return lambda * weight + (1.0 - lambda) * ratio;
}

void update_weights(OperatorStats& stats, double lambda) {
  for (std::size_t d = 0; d < stats.weight.size(); ++d)
    stats.weight[d] =
        updated_weight(stats.weight[d], lambda, stats.cum_improvements[d], stats.cum_seconds[d]);
}

namespace {

std::vector<int> fragment_customers_of(const Solution& sol, const std::vector<int>& open_sel) {
  std::vector<int> customers;
  for (int f : open_sel) {
    const auto& served = sol.served_by(f);
    customers.insert(customers.end(), served.begin(), served.end());
  }
  std::sort(customers.begin(), customers.end());
  customers.erase(std::unique(customers.begin(), customers.end()), customers.end());
  return customers;
}

}  // namespace

RunResult run(const Instance& inst, const EngineConfig& config) {
  const auto wall_start = std::chrono::steady_clock::now();
  const double budget = resolve_timeout(config.timeout, inst.num_facilities());
  const bool simulated = config.clock == ClockMode::simulated;
  double sim_now = 0.0;

  const auto now = [&]() -> double {
    if (simulated) return sim_now;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  };

  Rng rng(config.seed);

  Solution current = config.init == InitKind::sorted_cost
                         ? construct_sorted_cost(inst, config.init_extra_facilities)
                         : construct_amortized_greedy(inst);

  RunResult result(current);
  result.seed = config.seed;
  result.best_cost = current.cost();
  result.trace.push_back({now(), result.best_cost});
  result.time_to_best_s = result.trace.front().elapsed_seconds;

  OperatorStats stats;
  const bool adaptive = config.alns_lambda.has_value();
  const int num_ops = 2;  // 0: CF, 1: HC
  stats.weight.assign(num_ops, 0.0);
  if (adaptive) {
    stats.weight.assign(num_ops, 1.0 / num_ops);
  } else {
    stats.weight[0] = config.profile.p_cf;
    stats.weight[1] = 1.0 - config.profile.p_cf;
  }
  stats.cum_improvements.assign(num_ops, 0.0);
  stats.cum_seconds.assign(num_ops, 0.0);
  stats.times_selected.assign(num_ops, 0);

  while (now() < budget) {
    ++result.iterations;
    const double iter_wall_start = now();

    const int l_open = destroy_size(config.profile.nu, current.num_open(), inst.num_customers());
    const int op = select_operator(stats, rng);
    ++stats.times_selected[static_cast<std::size_t>(op)];

    SubProblem sp;
    bool extracted = false;
    for (int attempt = 0; attempt < 3 && !extracted; ++attempt) {
      const DestroySelection sel = op == 0 ? destroy_cheapest_facilities(current, l_open, rng)
                                           : destroy_hybrid_customers(current, l_open, rng);
      const std::vector<int> customers = fragment_customers_of(current, sel.open_facilities);
      if (customers.empty()) continue;  // degenerate draw; try a new seed facility
      const ClosedSelection closed =
          select_closed(current, customers, config.profile.l_closed, config.profile.p_mc, rng);
      sp = extract_subproblem(current, sel.open_facilities, closed.facilities);
      extracted = true;
    }
    if (!extracted) break;  // every open facility is empty: nothing to do

    RepairLimits limits;
    const double repair_budget = std::min(config.t_g, budget - now());
    if (simulated) {
      limits.max_nodes = std::max<long>(1, std::llround(repair_budget / kSimSecondsPerNode));
    } else {
      limits.wall_seconds = std::max(0.0, repair_budget);
    }

    const RepairOutcome outcome =
        solve_subproblem(inst, sp, sp.baseline_cost, config.accept, config.two_source, limits);
    result.repair_nodes += outcome.nodes;

    bool improved = false;
    if (outcome.has_fragment()) {
      const double before = current.cost();
      std::string why;
      if (!current.apply_repair(sp, outcome.fragment, &why))
        throw std::logic_error("repair returned a fragment breaking its contract: " + why);
      ++result.accepted;
      result.accepted_deltas.push_back(current.cost() - before);
      improved = current.cost() < before;
    }

    if (simulated)
      sim_now += kSimSecondsPerIteration +
                 static_cast<double>(outcome.nodes) * kSimSecondsPerNode;

    const double t_iteration = now() - iter_wall_start;
    stats.cum_seconds[static_cast<std::size_t>(op)] += t_iteration;
    if (improved) stats.cum_improvements[static_cast<std::size_t>(op)] += 1.0;
    if (adaptive) update_weights(stats, *config.alns_lambda);

    if (current.cost() < result.best_cost) {
      result.best_cost = current.cost();
      result.best = current;
      result.time_to_best_s = now();
      result.trace.push_back({result.time_to_best_s, result.best_cost});
    }
  }

  result.elapsed_s = now();
  result.operator_stats = stats;
  return result;
}

void write_trace_csv(const RunResult& result, std::ostream& out) {
  out << "elapsed_seconds,cost\n";
  char buf[64];
  for (const auto& point : result.trace) {
    const int len = std::snprintf(buf, sizeof(buf), "%.6f,%.6f\n", point.elapsed_seconds, point.cost);
    out.write(buf, len);
  }
}

}  // namespace cflp
