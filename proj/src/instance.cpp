#include "cflp/instance.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cflp/rng.hpp"

namespace cflp {

Instance::Instance(std::vector<Quantity> demands, std::vector<Quantity> capacities,
                   std::vector<double> opening_costs, std::vector<double> ship_costs,
                   std::vector<std::pair<int, int>> incompat_pairs)
    : n_(static_cast<int>(demands.size())),
      m_(static_cast<int>(capacities.size())),
      demands_(std::move(demands)),
      capacities_(std::move(capacities)),
      opening_costs_(std::move(opening_costs)),
      ship_costs_(std::move(ship_costs)),
      incompat_(std::move(incompat_pairs)) {
  if (n_ <= 0 || m_ <= 0) throw ParseError(0, "instance needs at least one customer and one facility");
  if (opening_costs_.size() != static_cast<std::size_t>(m_))
    throw ParseError(0, "opening cost count does not match facility count");
  if (ship_costs_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(m_))
    throw ParseError(0, "shipping cost matrix does not match n x m");

  for (int i = 0; i < n_; ++i)
    if (demand(i) <= 0) throw ParseError(0, "non-positive demand for customer " + std::to_string(i + 1));
  for (int j = 0; j < m_; ++j)
    if (capacity(j) <= 0) throw ParseError(0, "non-positive capacity for facility " + std::to_string(j + 1));
  for (int j = 0; j < m_; ++j)
    if (opening_cost(j) < 0) throw ParseError(0, "negative opening cost for facility " + std::to_string(j + 1));
  for (double c : ship_costs_)
    if (c < 0) throw ParseError(0, "negative shipping cost");

  for (auto& p : incompat_) {
    if (p.first == p.second) throw ParseError(0, "self-pair in incompatibility list");
    if (p.first > p.second) std::swap(p.first, p.second);
    if (p.first < 0 || p.second >= n_)
      throw ParseError(0, "incompatibility pair references customer out of range");
  }
  std::sort(incompat_.begin(), incompat_.end());
  if (std::adjacent_find(incompat_.begin(), incompat_.end()) != incompat_.end())
    throw ParseError(0, "duplicate incompatibility pair");

  adjacency_.assign(static_cast<std::size_t>(n_), {});
  for (const auto& [a, b] : incompat_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  for (int i = 0; i < n_; ++i) total_demand_ += demand(i);
  for (int j = 0; j < m_; ++j) total_capacity_ += capacity(j);
}

bool Instance::incompatible(int i1, int i2) const {
  const auto& adj = adjacency_[static_cast<std::size_t>(i1)];
  return std::binary_search(adj.begin(), adj.end(), i2);
}

bool operator==(const Instance& a, const Instance& b) {
  return a.num_customers() == b.num_customers() && a.num_facilities() == b.num_facilities() &&
         a.demands() == b.demands() && a.capacities() == b.capacities() &&
         a.opening_costs() == b.opening_costs() && a.incompat_pairs() == b.incompat_pairs() &&
         [&] {
           for (int i = 0; i < a.num_customers(); ++i)
             for (int j = 0; j < a.num_facilities(); ++j)
               if (a.ship_cost(i, j) != b.ship_cost(i, j)) return false;
           return true;
         }();
}

namespace {

// Whitespace tokenizer that tracks line numbers and skips '#' comments.
class TokenReader {
public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  // line the last token started on; falls back to the scan position
  int line() const { return token_line_ > 0 ? token_line_ : line_; }

  bool next_token(std::string& tok) {
    tok.clear();
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '#') {
        while ((c = in_.get()) != EOF && c != '\n') {}
        if (c == '\n') ++line_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        continue;
      }
      if (std::isspace(c)) continue;
      break;
    }
    token_line_ = line_;
    if (c == EOF) return false;
    tok.push_back(static_cast<char>(c));
    while ((c = in_.get()) != EOF && !std::isspace(c) && c != '#') tok.push_back(static_cast<char>(c));
    if (c == '#') {
      while ((c = in_.get()) != EOF && c != '\n') {}
    }
    if (c == '\n') ++line_;
    return true;
  }

  std::int64_t read_int(const char* what) {
    std::string tok = require(what);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(line(), std::string("expected integer for ") + what + ", got '" + tok + "'");
    return value;
  }

  double read_double(const char* what) {
    std::string tok = require(what);
    try {
      std::size_t pos = 0;
      double value = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return value;
    } catch (const std::exception&) {
      throw ParseError(line(), std::string("expected number for ") + what + ", got '" + tok + "'");
    }
  }

  std::string require(const char* what) {
    std::string tok;
    if (!next_token(tok)) throw ParseError(line(), std::string("unexpected end of input, expected ") + what);
    return tok;
  }

private:
  std::istream& in_;
  int line_ = 1;
  int token_line_ = 0;
};

std::string format_double(double v) {
  char buf[64];
  // shortest representation that round-trips
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  assert(ec == std::errc());
  return std::string(buf, ptr);
}

}  // namespace

Instance parse_instance(std::istream& in) {
  TokenReader rd(in);

  const std::int64_t m = rd.read_int("facility count");
  const std::int64_t n = rd.read_int("customer count");
  if (m <= 0 || n <= 0) throw ParseError(rd.line(), "header counts must be positive");

  std::vector<double> opening(static_cast<std::size_t>(m));
  for (auto& f : opening) f = rd.read_double("opening cost");

  std::vector<Quantity> capacities(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < capacities.size(); ++j) {
    capacities[j] = rd.read_int("capacity");
    if (capacities[j] <= 0) throw ParseError(rd.line(), "non-positive capacity");
  }

  std::vector<Quantity> demands(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < demands.size(); ++i) {
    demands[i] = rd.read_int("demand");
    if (demands[i] <= 0) throw ParseError(rd.line(), "non-positive demand");
  }

  std::vector<double> ship(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (auto& c : ship) {
    c = rd.read_double("shipping cost");
    if (c < 0) throw ParseError(rd.line(), "negative shipping cost");
  }

  const std::int64_t p = rd.read_int("incompatibility count");
  if (p < 0) throw ParseError(rd.line(), "negative incompatibility count");

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(p));
  std::vector<std::vector<int>> seen(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < p; ++k) {
    const std::int64_t raw1 = rd.read_int("pair customer index");
    const std::int64_t raw2 = rd.read_int("pair customer index");
    if (raw1 < 1 || raw1 > n || raw2 < 1 || raw2 > n)
      throw ParseError(rd.line(), "pair customer index out of range");
    if (raw1 == raw2) throw ParseError(rd.line(), "pair references the same customer twice");
    int a = static_cast<int>(std::min(raw1, raw2)) - 1;
    int b = static_cast<int>(std::max(raw1, raw2)) - 1;
    auto& row = seen[static_cast<std::size_t>(a)];
    if (std::find(row.begin(), row.end(), b) != row.end())
      throw ParseError(rd.line(), "duplicate incompatibility pair " + std::to_string(a + 1) + " " +
                                      std::to_string(b + 1));
    row.push_back(b);
    pairs.emplace_back(a, b);
  }

  std::string extra;
  if (rd.next_token(extra)) throw ParseError(rd.line(), "trailing content after incompatibility pairs");

  return Instance(std::move(demands), std::move(capacities), std::move(opening), std::move(ship),
                  std::move(pairs));
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open instance file " + path);
  return parse_instance(in);
}

void serialize_instance(const Instance& inst, std::ostream& out) {
  const int n = inst.num_customers();
  const int m = inst.num_facilities();
  out << m << ' ' << n << '\n';
  for (int j = 0; j < m; ++j) out << (j ? " " : "") << format_double(inst.opening_cost(j));
  out << '\n';
  for (int j = 0; j < m; ++j) out << (j ? " " : "") << inst.capacity(j);
  out << '\n';
  for (int i = 0; i < n; ++i) out << (i ? " " : "") << inst.demand(i);
  out << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) out << (j ? " " : "") << format_double(inst.ship_cost(i, j));
    out << '\n';
  }
  const auto& pairs = inst.incompat_pairs();
  out << pairs.size() << '\n';
  for (const auto& [a, b] : pairs) out << a + 1 << ' ' << b + 1 << '\n';
}

std::string serialize_instance_text(const Instance& inst) {
  std::ostringstream out;
  serialize_instance(inst, out);
  return out.str();
}

FeasibilityBound validate_feasibility_bound(const Instance& inst) {
  FeasibilityBound r;
  r.total_demand = inst.total_demand();
  r.total_capacity = inst.total_capacity();
  r.holds = r.total_capacity >= r.total_demand;
  return r;
}

Instance generate_instance(std::uint64_t seed, const GeneratorParams& params) {
  if (params.n <= 0 || params.m <= 0) throw std::invalid_argument("generator needs n, m >= 1");
  if (params.incompat_density < 0.0 || params.incompat_density > 1.0)
    throw std::invalid_argument("incompat_density must be in [0, 1]");
  for (const auto& r : {params.demand, params.capacity, params.opening, params.ship})
    if (r.lo < 0 || r.hi < r.lo) throw std::invalid_argument("generator range must satisfy 0 <= lo <= hi");
  if (params.demand.lo <= 0 || params.capacity.lo <= 0)
    throw std::invalid_argument("demand and capacity ranges must be positive");

  Rng rng(seed);
  const int n = params.n;
  const int m = params.m;

  std::vector<Quantity> demands(static_cast<std::size_t>(n));
  for (auto& d : demands) d = rng.between(params.demand.lo, params.demand.hi);

  std::vector<Quantity> capacities(static_cast<std::size_t>(m));
  for (auto& s : capacities) s = rng.between(params.capacity.lo, params.capacity.hi);

  Quantity total_demand = 0;
  for (auto d : demands) total_demand += d;
  Quantity total_capacity = 0;
  for (auto s : capacities) total_capacity += s;

  // lift capacities uniformly until total >= ceil(1.2 * total demand)
  const Quantity need = (6 * total_demand + 4) / 5;
  if (total_capacity < need) {
    const Quantity bump = (need - total_capacity + m - 1) / m;
    for (auto& s : capacities) s += bump;
  }

  std::vector<double> opening(static_cast<std::size_t>(m));
  for (auto& f : opening) f = static_cast<double>(rng.between(params.opening.lo, params.opening.hi));

  std::vector<double> ship(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (auto& c : ship) c = static_cast<double>(rng.between(params.ship.lo, params.ship.hi));

  const std::int64_t all_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  auto want_pairs =
      static_cast<std::int64_t>(std::llround(params.incompat_density * static_cast<double>(all_pairs)));
  std::vector<std::pair<int, int>> pairs;
  if (want_pairs > 0) {
    std::vector<std::int64_t> pool(static_cast<std::size_t>(all_pairs));
    for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = static_cast<std::int64_t>(k);
    for (std::int64_t k = 0; k < want_pairs; ++k) {
      const auto r = k + rng.below(all_pairs - k);
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(r)]);
    }
    pairs.reserve(static_cast<std::size_t>(want_pairs));
    for (std::int64_t k = 0; k < want_pairs; ++k) {
      // unrank: index -> (i1, i2) with i1 < i2
      std::int64_t idx = pool[static_cast<std::size_t>(k)];
      int i1 = 0;
      std::int64_t row = n - 1;
      while (idx >= row) {
        idx -= row;
        --row;
        ++i1;
      }
      const int i2 = i1 + 1 + static_cast<int>(idx);
      pairs.emplace_back(i1, i2);
    }
  }

  return Instance(std::move(demands), std::move(capacities), std::move(opening), std::move(ship),
                  std::move(pairs));
}

}  // namespace cflp
