#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cflp/construct.hpp"
#include "cflp/instance.hpp"
#include "cflp/repair.hpp"
#include "cflp/rng.hpp"
#include "cflp/solution.hpp"

namespace cflp {

// Tuned parameter set keyed on instance size.
struct Profile {
  int nu = 65;          // sub-problem size (customers targeted per destroy)
  int l_closed = 9;     // closed facilities added per sub-problem
  double p_mc = 0.44;   // probability of the minimum-cost closed strategy
  double p_cf = 0.34;   // weight of the CF destroy operator
};

// m <= 700 facilities: (65, 9, 0.44, 0.34); larger: (35, 6, 0.45, 0.35).
Profile default_profile(int num_facilities);

struct TimeoutRule {
  enum class Kind { short_rule, long_rule, explicit_seconds };
  Kind kind = Kind::short_rule;
  double seconds = 0.0;  // used by explicit_seconds
};

// short: 10 * sqrt(m); long: m; explicit: as given.
double resolve_timeout(const TimeoutRule& rule, int num_facilities);

enum class InitKind { sorted_cost, amortized_greedy };

// wall: real elapsed time (paper-style benchmarking). simulated: time derived
// from the work performed (a fixed quantum per repair node and per iteration),
// which makes whole runs bit-reproducible.
enum class ClockMode { wall, simulated };

constexpr double kSimSecondsPerNode = 1e-4;
constexpr double kSimSecondsPerIteration = 1e-3;

struct EngineConfig {
  Profile profile;
  double t_g = 20.0;  // repair budget per iteration, capped by remaining run time
  InitKind init = InitKind::sorted_cost;
  int init_extra_facilities = 5;
  CutoffMode accept = CutoffMode::strict;
  bool two_source = false;
  std::optional<double> alns_lambda;  // adaptive weights when set
  TimeoutRule timeout;
  ClockMode clock = ClockMode::wall;
  std::uint64_t seed = 1;
};

// Per destroy-operator roulette state. Index 0 is CF, 1 is HC.
struct OperatorStats {
  std::vector<double> weight;
  std::vector<double> cum_improvements;  // Σ selection^j (1 per improving application)
  std::vector<double> cum_seconds;       // Σ t^j
  std::vector<long> times_selected;
};

// Roulette wheel: operator d with probability weight_d / Σ weights.
int select_operator(const OperatorStats& stats, Rng& rng);

// λ p + (1-λ) Σimprovements/Σseconds, with a zero ratio while no time has
// been spent.
double updated_weight(double weight, double lambda, double cum_improvements, double cum_seconds);
void update_weights(OperatorStats& stats, double lambda);

struct TracePoint {
  double elapsed_seconds = 0.0;
  double cost = 0.0;
};

struct RunResult {
  Solution best;
  double best_cost = 0.0;
  std::vector<TracePoint> trace;  // best-ever cost at each improvement
  long iterations = 0;
  long accepted = 0;
  long repair_nodes = 0;
  double time_to_best_s = 0.0;
  double elapsed_s = 0.0;
  std::uint64_t seed = 0;
  OperatorStats operator_stats;
  std::vector<double> accepted_deltas;  // cost change of each accepted move

  explicit RunResult(Solution s) : best(std::move(s)) {}
};

// The LNS loop: construct, then destroy/repair until the time budget runs
// out, integrating fragments the repair solver admits under the cutoff.
RunResult run(const Instance& inst, const EngineConfig& config);

// Trace rows "elapsed_seconds,cost" under that exact header.
void write_trace_csv(const RunResult& result, std::ostream& out);

}  // namespace cflp
