#include "cflp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cflp {

double compute_gap(double cost, double best_known) {
  if (best_known <= 0.0) throw std::invalid_argument("best-known value must be positive");
  return (cost - best_known) / best_known * 100.0;
}

Variant parse_variant(const std::string& label) {
  Variant v;
  v.name = label;
  if (label == "base") return v;
  if (label == "init") {
    v.init = InitKind::amortized_greedy;
    return v;
  }
  if (label == "accept") {
    v.accept = CutoffMode::weak;
    return v;
  }
  if (label == "init_accept") {
    v.init = InitKind::amortized_greedy;
    v.accept = CutoffMode::weak;
    return v;
  }
  if (label == "2s") {
    v.two_source = true;
    return v;
  }
  if (label.rfind("alns:", 0) == 0) {
    const std::string arg = label.substr(5);
    try {
      std::size_t pos = 0;
      const double lambda = std::stod(arg, &pos);
      if (pos != arg.size() || lambda < 0.0 || lambda > 1.0) throw std::invalid_argument(arg);
      v.alns_lambda = lambda;
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad alns lambda '" + arg + "' (want a value in [0,1])");
    }
  }
  throw std::invalid_argument("unknown variant '" + label +
                              "' (base|init|accept|init_accept|2s|alns:<lambda>)");
}

void apply_variant(EngineConfig& config, const Variant& variant) {
  config.init = variant.init;
  config.accept = variant.accept;
  config.two_source = variant.two_source;
  config.alns_lambda = variant.alns_lambda;
}

std::map<std::string, double> load_bks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open BKS file " + path);
  std::map<std::string, double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string name;
    double value = 0.0;
    if (!(ls >> name)) continue;
    if (!(ls >> value) || value <= 0.0)
      throw std::runtime_error("BKS line " + std::to_string(lineno) + ": want 'name value'");
    out[name] = value;
  }
  return out;
}

std::string format_cost(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

namespace {

std::string format_gap(const std::optional<double>& gap) {
  if (!gap) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", *gap);
  return buf;
}

std::string format_seconds(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name.resize(dot);
  return name;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const EngineConfig& c, const std::string& variant) {
  std::ostringstream os;
  os << variant << '|' << c.profile.nu << '|' << c.profile.l_closed << '|' << c.profile.p_mc << '|'
     << c.profile.p_cf << '|' << c.t_g << '|' << static_cast<int>(c.init) << '|'
     << c.init_extra_facilities << '|' << static_cast<int>(c.accept) << '|' << c.two_source << '|'
     << (c.alns_lambda ? *c.alns_lambda : -1.0) << '|' << static_cast<int>(c.timeout.kind) << '|'
     << c.timeout.seconds << '|' << static_cast<int>(c.clock);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

}  // namespace

std::vector<BenchmarkJob> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  std::vector<BenchmarkJob> jobs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    BenchmarkJob job;
    if (!(ls >> job.instance_path)) continue;
    if (!(ls >> job.instance_name)) job.instance_name = stem_of(job.instance_path);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

BenchmarkReport run_benchmark(const BenchmarkOptions& options) {
  struct Task {
    std::size_t row_index;
    std::string instance_path;
    std::string instance_name;
    std::string variant_label;
    std::uint64_t seed;
  };

  BenchmarkReport report;
  std::vector<Task> tasks;

  for (const auto& job : options.instances) {
    const std::string name = job.instance_name.empty() ? stem_of(job.instance_path) : job.instance_name;
    for (const auto& variant_label : options.variants) {
      for (int r = 0; r < options.runs; ++r) {
        RunRow row;
        row.instance = name;
        row.variant = variant_label;
        row.seed = options.seed_base + static_cast<std::uint64_t>(r);
        tasks.push_back({report.rows.size(), job.instance_path, name, variant_label, row.seed});
        report.rows.push_back(std::move(row));
      }
    }
  }

  // parse each instance once up front; a broken file fails all its runs
  std::map<std::string, Instance> instances;
  std::map<std::string, std::string> load_errors;
  for (const auto& job : options.instances) {
    if (instances.count(job.instance_path) || load_errors.count(job.instance_path)) continue;
    try {
      instances.emplace(job.instance_path, load_instance_any(job.instance_path));
    } catch (const std::exception& e) {
      load_errors.emplace(job.instance_path, e.what());
    }
  }

  const auto run_task = [&](const Task& task) {
    RunRow& row = report.rows[task.row_index];
    const auto err = load_errors.find(task.instance_path);
    if (err != load_errors.end()) {
      row.error = err->second;
      return;
    }
    const Instance& inst = instances.at(task.instance_path);
    try {
      EngineConfig config;
      config.profile = options.profile == ProfileChoice::automatic
                           ? default_profile(inst.num_facilities())
                           : (options.profile == ProfileChoice::small ? default_profile(700)
                                                                      : default_profile(701));
      config.timeout = options.timeout;
      config.clock = options.clock;
      config.t_g = options.t_g;
      config.seed = task.seed;
      apply_variant(config, parse_variant(task.variant_label));

      const RunResult res = run(inst, config);
      row.timeout_s = resolve_timeout(options.timeout, inst.num_facilities());
      row.cost = res.best_cost;
      row.time_to_best_s = res.time_to_best_s;
      row.iterations = res.iterations;
      row.accepted = res.accepted;
      row.repair_nodes = res.repair_nodes;
      const auto bks = options.bks.find(task.instance_name);
      if (bks != options.bks.end()) row.gap_pct = compute_gap(res.best_cost, bks->second);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (const auto& task : tasks) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t k = next.fetch_add(1);
          if (k >= tasks.size()) return;
          run_task(tasks[k]);
        }
      });
    for (auto& th : pool) th.join();
  }

  // per instance x variant aggregates over successful runs, manifest order
  for (const auto& job : options.instances) {
    const std::string name = job.instance_name.empty() ? stem_of(job.instance_path) : job.instance_name;
    for (const auto& variant_label : options.variants) {
      SummaryRow s;
      s.instance = name;
      s.variant = variant_label;
      double cost_sum = 0.0, gap_sum = 0.0;
      int gaps = 0;
      for (const auto& row : report.rows) {
        if (row.instance != name || row.variant != variant_label || row.error) continue;
        if (s.runs == 0 || row.cost < s.min_cost) s.min_cost = row.cost;
        cost_sum += row.cost;
        ++s.runs;
        if (row.gap_pct) {
          if (gaps == 0 || *row.gap_pct < *s.min_gap_pct) s.min_gap_pct = *row.gap_pct;
          gap_sum += *row.gap_pct;
          ++gaps;
        }
      }
      if (s.runs > 0) {
        s.avg_cost = cost_sum / s.runs;
        if (gaps > 0) s.avg_gap_pct = gap_sum / gaps;
        report.summaries.push_back(std::move(s));
      }
    }
  }

  for (const auto& variant_label : options.variants) {
    EngineConfig config;
    config.timeout = options.timeout;
    config.clock = options.clock;
    config.t_g = options.t_g;
    apply_variant(config, parse_variant(variant_label));
    report.config_notes.push_back("# config variant=" + variant_label +
                                  " hash=" + config_hash(config, variant_label));
  }

  return report;
}

void write_benchmark_csv(const BenchmarkReport& report, std::ostream& out) {
  for (const auto& note : report.config_notes) out << note << '\n';
  out << "instance,variant,seed,timeout_s,cost,gap_pct,time_to_best_s,iterations,accepted,repair_nodes\n";
  for (const auto& row : report.rows) {
    if (row.error) {
      out << row.instance << ',' << row.variant << ',' << row.seed << ",,,,,,,\n";
      continue;
    }
    out << row.instance << ',' << row.variant << ',' << row.seed << ','
        << format_seconds(row.timeout_s) << ',' << format_cost(row.cost) << ','
        << format_gap(row.gap_pct) << ',' << format_seconds(row.time_to_best_s) << ','
        << row.iterations << ',' << row.accepted << ',' << row.repair_nodes << '\n';
  }
  for (const auto& s : report.summaries) {
    out << s.instance << ',' << s.variant << ",summary,," << format_cost(s.min_cost) << ','
        << format_gap(s.min_gap_pct) << ",,,,\n";
  }
}

void write_summary_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "instance,variant,runs,min_cost,avg_cost,min_gap_pct,avg_gap_pct\n";
  for (const auto& s : report.summaries)
    out << s.instance << ',' << s.variant << ',' << s.runs << ',' << format_cost(s.min_cost) << ','
        << format_cost(s.avg_cost) << ',' << format_gap(s.min_gap_pct) << ','
        << format_gap(s.avg_gap_pct) << '\n';
}

namespace {

// dzn-style scanner: skips to the '[' after a key, reads numbers separated by
// arbitrary punctuation
class DznReader {
public:
  explicit DznReader(std::istream& in) : in_(in) {}

  double read_named_scalar(const char* key) {
    seek(key);
    expect('=');
    return read_number(key);
  }

  void open_array(const char* key) {
    seek(key);
    while (in_.good()) {
      const int c = in_.get();
      if (c == '[') return;
      if (c == EOF) break;
    }
    throw ParseError(0, std::string("expected '[' after ") + key);
  }

  double read_number(const char* what) {
    skip_separators();
    double value = 0.0;
    if (!(in_ >> value)) throw ParseError(0, std::string("expected number for ") + what);
    return value;
  }

private:
  void seek(const char* key) {
    std::string token;
    while (in_ >> token) {
      if (token.rfind(key, 0) == 0) return;
    }
    throw ParseError(0, std::string("key not found: ") + key);
  }

  void expect(char wanted) {
    skip_separators();
    const int c = in_.get();
    if (c != wanted) throw ParseError(0, std::string("expected '") + wanted + "'");
  }

  void skip_separators() {
    while (in_.good()) {
      const int c = in_.peek();
      if (c == EOF) return;
      if (std::isspace(c) || c == ',' || c == '|' || c == ';') {
        in_.get();
        continue;
      }
      return;
    }
  }

  std::istream& in_;
};

}  // namespace

Instance parse_dzn_instance(std::istream& in) {
  DznReader rd(in);
  const int m = static_cast<int>(rd.read_named_scalar("Warehouses"));
  const int n = static_cast<int>(rd.read_named_scalar("Stores"));
  if (m <= 0 || n <= 0) throw ParseError(0, "dzn header counts must be positive");

  std::vector<Quantity> capacities(static_cast<std::size_t>(m));
  rd.open_array("Capacity");
  for (auto& s : capacities) s = static_cast<Quantity>(rd.read_number("capacity"));

  std::vector<double> opening(static_cast<std::size_t>(m));
  rd.open_array("FixedCost");
  for (auto& f : opening) f = rd.read_number("fixed cost");

  std::vector<Quantity> demands(static_cast<std::size_t>(n));
  rd.open_array("Goods");
  for (auto& d : demands) d = static_cast<Quantity>(rd.read_number("goods"));

  std::vector<double> ship(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  rd.open_array("SupplyCost");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      ship[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
          rd.read_number("supply cost");

  const int pairs = static_cast<int>(rd.read_named_scalar("Incompatibilities"));
  std::vector<std::pair<int, int>> incompat;
  incompat.reserve(static_cast<std::size_t>(pairs));
  rd.open_array("IncompatiblePairs");
  for (int k = 0; k < pairs; ++k) {
    const int a = static_cast<int>(rd.read_number("pair index"));
    const int b = static_cast<int>(rd.read_number("pair index"));
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError(0, "dzn pair index out of range");
    incompat.emplace_back(a - 1, b - 1);
  }

  return Instance(std::move(demands), std::move(capacities), std::move(opening), std::move(ship),
                  std::move(incompat));
}

Instance load_dzn_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open instance file " + path);
  return parse_dzn_instance(in);
}

Instance load_instance_any(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw ParseError(0, "cannot open instance file " + path);
  int c;
  while ((c = probe.get()) != EOF && std::isspace(c)) {}
  probe.close();
  if (c != EOF && (std::isalpha(c) || c == '%')) return load_dzn_instance(path);
  return load_instance(path);
}

}  // namespace cflp
