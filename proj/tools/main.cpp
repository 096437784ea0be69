#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "cflp/bench.hpp"
#include "cflp/destroy.hpp"
#include "cflp/engine.hpp"
#include "cflp/instance.hpp"
#include "cflp/oracle.hpp"
#include "cflp/repair.hpp"
#include "cflp/solution.hpp"

namespace {

cflp::TimeoutRule parse_timeout(const std::string& text) {
  cflp::TimeoutRule rule;
  if (text == "short") {
    rule.kind = cflp::TimeoutRule::Kind::short_rule;
  } else if (text == "long") {
    rule.kind = cflp::TimeoutRule::Kind::long_rule;
  } else {
    rule.kind = cflp::TimeoutRule::Kind::explicit_seconds;
    try {
      std::size_t pos = 0;
      rule.seconds = std::stod(text, &pos);
      if (pos != text.size() || rule.seconds < 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--timeout", "want 'short', 'long', or seconds");
    }
  }
  return rule;
}

cflp::ProfileChoice parse_profile(const std::string& text) {
  if (text == "auto") return cflp::ProfileChoice::automatic;
  if (text == "small") return cflp::ProfileChoice::small;
  if (text == "large") return cflp::ProfileChoice::large;
  throw CLI::ValidationError("--profile", "want auto, small, or large");
}

cflp::ClockMode parse_clock(const std::string& text) {
  if (text == "wall") return cflp::ClockMode::wall;
  if (text == "virtual") return cflp::ClockMode::simulated;
  throw CLI::ValidationError("--clock", "want wall or virtual");
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LNS solver and benchmark harness for the multi-source capacitated "
               "facility location problem with customer incompatibilities"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "Write a synthetic instance in the canonical format");
  std::uint64_t gen_seed = 1;
  cflp::GeneratorParams gen_params;
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--n", gen_params.n, "customers")->required();
  gen->add_option("--m", gen_params.m, "facilities")->required();
  gen->add_option("--density", gen_params.incompat_density, "incompatible fraction of customer pairs");
  gen->add_option("--demand-min", gen_params.demand.lo);
  gen->add_option("--demand-max", gen_params.demand.hi);
  gen->add_option("--capacity-min", gen_params.capacity.lo);
  gen->add_option("--capacity-max", gen_params.capacity.hi);
  gen->add_option("--opening-min", gen_params.opening.lo);
  gen->add_option("--opening-max", gen_params.opening.hi);
  gen->add_option("--ship-min", gen_params.ship.lo);
  gen->add_option("--ship-max", gen_params.ship.hi);
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");
  gen->callback([&] {
    const cflp::Instance inst = cflp::generate_instance(gen_seed, gen_params);
    std::ofstream file;
    cflp::serialize_instance(inst, open_or_stdout(file, gen_out));
  });

  // ---- validate ----
  auto* val = app.add_subcommand("validate", "Parse an instance and report the aggregate check");
  std::string val_path;
  val->add_option("instance", val_path)->required();
  val->callback([&] {
    const cflp::Instance inst = cflp::load_instance_any(val_path);
    const auto bound = cflp::validate_feasibility_bound(inst);
    std::cout << "customers " << inst.num_customers() << "\n"
              << "facilities " << inst.num_facilities() << "\n"
              << "incompatible_pairs " << inst.incompat_pairs().size() << "\n"
              << "total_demand " << bound.total_demand << "\n"
              << "total_capacity " << bound.total_capacity << "\n"
              << "capacity_covers_demand " << (bound.holds ? "yes" : "no") << "\n";
    if (!bound.holds) std::exit(2);
  });

  // ---- convert ----
  auto* conv = app.add_subcommand("convert", "Rewrite a wlp/cflp-ci file in the canonical format");
  std::string conv_in, conv_out;
  conv->add_option("input", conv_in)->required();
  conv->add_option("-o,--out", conv_out, "output path (default stdout)");
  conv->callback([&] {
    const cflp::Instance inst = cflp::load_instance_any(conv_in);
    std::ofstream file;
    cflp::serialize_instance(inst, open_or_stdout(file, conv_out));
  });

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "One LNS run on one instance");
  std::string solve_path, solve_variant = "init_accept", solve_timeout = "short";
  std::string solve_profile = "auto", solve_clock = "wall", solve_trace, solve_solution;
  std::uint64_t solve_seed = 1;
  double solve_tg = 20.0;
  int solve_k = 5;
  solve->add_option("instance", solve_path)->required();
  solve->add_option("--variant", solve_variant, "base|init|accept|init_accept|2s|alns:<lambda>");
  solve->add_option("--seed", solve_seed);
  solve->add_option("--timeout", solve_timeout, "short | long | seconds");
  solve->add_option("--profile", solve_profile, "auto | small | large");
  solve->add_option("--clock", solve_clock, "wall | virtual");
  solve->add_option("--t-g", solve_tg, "repair budget per iteration (seconds)");
  solve->add_option("--k", solve_k, "extra facilities for the sorted-cost start");
  solve->add_option("--trace", solve_trace, "write elapsed_seconds,cost trace CSV here");
  solve->add_option("--solution-out", solve_solution, "write the best solution here");
  solve->callback([&] {
    const cflp::Instance inst = cflp::load_instance_any(solve_path);
    cflp::EngineConfig config;
    const auto profile = parse_profile(solve_profile);
    config.profile = profile == cflp::ProfileChoice::automatic
                         ? cflp::default_profile(inst.num_facilities())
                         : (profile == cflp::ProfileChoice::small ? cflp::default_profile(700)
                                                                  : cflp::default_profile(701));
    config.timeout = parse_timeout(solve_timeout);
    config.clock = parse_clock(solve_clock);
    config.seed = solve_seed;
    config.t_g = solve_tg;
    config.init_extra_facilities = solve_k;
    cflp::apply_variant(config, cflp::parse_variant(solve_variant));

    const cflp::RunResult res = cflp::run(inst, config);
    std::cout << "cost " << cflp::format_cost(res.best_cost) << "\n"
              << "iterations " << res.iterations << "\n"
              << "accepted " << res.accepted << "\n"
              << "repair_nodes " << res.repair_nodes << "\n"
              << "time_to_best_s " << res.time_to_best_s << "\n"
              << "seed " << res.seed << "\n";
    if (!solve_trace.empty()) {
      std::ofstream file;
      cflp::write_trace_csv(res, open_or_stdout(file, solve_trace));
    }
    if (!solve_solution.empty()) {
      std::ofstream file;
      cflp::write_solution(res.best, open_or_stdout(file, solve_solution));
    }
  });

  // ---- exact ----
  auto* exact = app.add_subcommand("exact", "Run the repair solver on the whole instance");
  std::string exact_path, exact_solution;
  double exact_budget = std::numeric_limits<double>::infinity();
  bool exact_two_source = false;
  exact->add_option("instance", exact_path)->required();
  exact->add_option("--budget", exact_budget, "wall seconds (default unlimited)");
  exact->add_flag("--two-source", exact_two_source, "at most two facilities per customer");
  exact->add_option("--solution-out", exact_solution);
  exact->callback([&] {
    const cflp::Instance inst = cflp::load_instance_any(exact_path);
    const cflp::SubProblem sp = cflp::whole_instance_subproblem(inst);
    cflp::RepairLimits limits;
    limits.wall_seconds = exact_budget;
    const auto outcome =
        cflp::solve_subproblem(inst, sp, std::numeric_limits<double>::infinity(),
                               cflp::CutoffMode::weak, exact_two_source, limits);
    switch (outcome.status) {
      case cflp::RepairStatus::improved:
        std::cout << "status optimal\n";
        break;
      case cflp::RepairStatus::timeout_with_incumbent:
        std::cout << "status feasible (budget hit)\n";
        break;
      case cflp::RepairStatus::infeasible:
        std::cout << "status infeasible\n";
        break;
      default:
        std::cout << "status unknown (budget hit before any solution)\n";
        break;
    }
    std::cout << "nodes " << outcome.nodes << "\nseconds " << outcome.seconds << "\n";
    if (outcome.has_fragment()) {
      std::cout << "cost " << cflp::format_cost(outcome.cost) << "\n";
      if (!exact_solution.empty()) {
        cflp::Solution sol(inst);
        std::string why;
        if (!sol.apply_repair(sp, outcome.fragment, &why))
          throw std::runtime_error("internal: exact fragment rejected: " + why);
        std::ofstream file;
        cflp::write_solution(sol, open_or_stdout(file, exact_solution));
      }
    }
    if (outcome.status == cflp::RepairStatus::infeasible) std::exit(3);
  });

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum for tiny instances (m<=4, n<=6)");
  std::string oracle_path;
  oracle->add_option("instance", oracle_path)->required();
  oracle->callback([&] {
    const cflp::Instance inst = cflp::load_instance_any(oracle_path);
    const cflp::OracleResult res = cflp::solve_exact(inst);
    if (!res.feasible) {
      std::cout << "status infeasible\n";
      std::exit(3);
    }
    std::cout << "status optimal\ncost " << cflp::format_cost(res.cost) << "\n";
    for (const auto& s : res.shipments)
      std::cout << s.customer + 1 << ' ' << s.facility + 1 << ' ' << s.quantity << "\n";
  });

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "Run an instance x variant x seed matrix");
  std::vector<std::string> bench_instances, bench_variants;
  std::string bench_manifest, bench_bks, bench_out, bench_summary_out;
  std::string bench_timeout = "short", bench_profile = "auto", bench_clock = "wall";
  int bench_runs = 10, bench_jobs = 1;
  std::uint64_t bench_seed_base = 1;
  double bench_tg = 20.0;
  bench->add_option("--instance", bench_instances, "instance path (repeatable)");
  bench->add_option("--manifest", bench_manifest, "file with one instance path per line");
  bench->add_option("--variant", bench_variants, "variant label (repeatable)");
  bench->add_option("--runs", bench_runs);
  bench->add_option("--seed-base", bench_seed_base, "run r uses seed seed-base + r");
  bench->add_option("--timeout", bench_timeout, "short | long | seconds");
  bench->add_option("--profile", bench_profile, "auto | small | large");
  bench->add_option("--clock", bench_clock, "wall | virtual");
  bench->add_option("--t-g", bench_tg);
  bench->add_option("--bks", bench_bks, "best-known values: 'name value' lines");
  bench->add_option("--out", bench_out, "run CSV (default stdout)");
  bench->add_option("--summary-out", bench_summary_out, "min/avg CSV (default <out>.summary.csv)");
  bench->add_option("--jobs", bench_jobs, "parallel runs");
  bench->callback([&] {
    cflp::BenchmarkOptions options;
    if (!bench_manifest.empty()) options.instances = cflp::load_manifest(bench_manifest);
    for (const auto& path : bench_instances) options.instances.push_back({path, ""});
    if (options.instances.empty())
      throw CLI::ValidationError("--instance", "need --instance or --manifest");
    if (!bench_variants.empty()) options.variants = bench_variants;
    for (const auto& label : options.variants) cflp::parse_variant(label);  // validate early
    options.runs = bench_runs;
    options.seed_base = bench_seed_base;
    options.timeout = parse_timeout(bench_timeout);
    options.profile = parse_profile(bench_profile);
    options.clock = parse_clock(bench_clock);
    options.t_g = bench_tg;
    options.jobs = bench_jobs;
    if (!bench_bks.empty()) options.bks = cflp::load_bks(bench_bks);

    const cflp::BenchmarkReport report = cflp::run_benchmark(options);
    {
      std::ofstream file;
      cflp::write_benchmark_csv(report, open_or_stdout(file, bench_out));
    }
    std::string summary_path = bench_summary_out;
    if (summary_path.empty() && !bench_out.empty() && bench_out != "-")
      summary_path = bench_out + ".summary.csv";
    if (!summary_path.empty()) {
      std::ofstream file;
      cflp::write_summary_csv(report, open_or_stdout(file, summary_path));
    }
    long failures = 0;
    for (const auto& row : report.rows)
      if (row.error) {
        std::cerr << "run failed: " << row.instance << " variant " << row.variant << " seed "
                  << row.seed << ": " << *row.error << "\n";
        ++failures;
      }
    if (failures > 0) std::cerr << failures << " of " << report.rows.size() << " runs failed\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
