#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cflp/engine.hpp"
#include "cflp/instance.hpp"

namespace cflp {

// Percentage above (positive) or below (negative) the best known solution.
double compute_gap(double cost, double best_known);

// Variant labels: base | init | accept | init_accept | 2s | alns:<lambda>.
struct Variant {
  std::string name = "base";
  InitKind init = InitKind::sorted_cost;
  CutoffMode accept = CutoffMode::strict;
  bool two_source = false;
  std::optional<double> alns_lambda;
};
Variant parse_variant(const std::string& label);
void apply_variant(EngineConfig& config, const Variant& variant);

// Sidecar "name value" lines; '#' comments allowed.
std::map<std::string, double> load_bks(const std::string& path);

enum class ProfileChoice { automatic, small, large };

struct BenchmarkJob {
  std::string instance_path;
  std::string instance_name;  // defaults to the file stem
};

struct BenchmarkOptions {
  std::vector<BenchmarkJob> instances;
  std::vector<std::string> variants{"init_accept"};
  int runs = 10;
  std::uint64_t seed_base = 1;
  TimeoutRule timeout;
  ProfileChoice profile = ProfileChoice::automatic;
  ClockMode clock = ClockMode::wall;
  double t_g = 20.0;
  std::map<std::string, double> bks;
  int jobs = 1;
};

struct RunRow {
  std::string instance;
  std::string variant;
  std::uint64_t seed = 0;
  double timeout_s = 0.0;
  double cost = 0.0;
  std::optional<double> gap_pct;
  double time_to_best_s = 0.0;
  long iterations = 0;
  long accepted = 0;
  long repair_nodes = 0;
  std::optional<std::string> error;  // failed runs keep their slot
};

struct SummaryRow {
  std::string instance;
  std::string variant;
  int runs = 0;
  double min_cost = 0.0;
  double avg_cost = 0.0;
  std::optional<double> min_gap_pct;
  std::optional<double> avg_gap_pct;
};

struct BenchmarkReport {
  std::vector<RunRow> rows;          // manifest order
  std::vector<SummaryRow> summaries;
  std::vector<std::string> config_notes;  // per-variant config hash lines
};

// Runs the instance x variant x seed matrix (seeds seed_base .. seed_base +
// runs - 1), up to `jobs` runs in flight. Per-run failures are recorded and
// the rest of the matrix proceeds.
BenchmarkReport run_benchmark(const BenchmarkOptions& options);

// Exact header:
// instance,variant,seed,timeout_s,cost,gap_pct,time_to_best_s,iterations,accepted,repair_nodes
// preceded by '#' config lines; one summary row per instance/variant pair
// (seed column "summary") carrying the minimum cost over its runs.
void write_benchmark_csv(const BenchmarkReport& report, std::ostream& out);

// Full min/avg table: instance,variant,runs,min_cost,avg_cost,min_gap_pct,avg_gap_pct.
void write_summary_csv(const BenchmarkReport& report, std::ostream& out);

// Manifest: one instance path per line, optional name after whitespace.
std::vector<BenchmarkJob> load_manifest(const std::string& path);

// Adapter for the published wlp / cflp-ci files ("Warehouses = ...;" headers
// with bracketed arrays). Supply costs arrive per store x warehouse.
Instance parse_dzn_instance(std::istream& in);
Instance load_dzn_instance(const std::string& path);

// Reads either format: dzn when the first non-blank character is a letter.
Instance load_instance_any(const std::string& path);

std::string format_cost(double value);

}  // namespace cflp
