#include "cflp/destroy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cflp {

double facility_quality(const Instance& inst, int facility, const std::vector<int>& customers) {
  if (customers.empty()) throw std::invalid_argument("facility quality needs a non-empty customer set");
  double sum = 0.0;
  for (int i : customers) sum += inst.ship_cost(i, facility);
  return sum / static_cast<double>(customers.size());
}

int destroy_size(int nu, int num_open, int num_customers) {
  const double raw = static_cast<double>(nu) * static_cast<double>(num_open) /
                     static_cast<double>(num_customers);
  return std::max(1, static_cast<int>(std::floor(raw + 0.5)));
}

namespace {

int pick_seed_facility(const Solution& sol, Rng& rng) {
  const auto open = sol.open_facilities();
  if (open.empty()) throw std::logic_error("destroy needs at least one open facility");
  return open[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(open.size())))];
}

// k lowest-quality entries, quality ties broken by facility index.
std::vector<int> lowest_quality(const std::vector<std::pair<double, int>>& ranked, int k) {
  std::vector<std::pair<double, int>> sorted(ranked);
  std::sort(sorted.begin(), sorted.end());
  if (static_cast<int>(sorted.size()) > k) sorted.resize(static_cast<std::size_t>(k));
  std::vector<int> out;
  out.reserve(sorted.size());
  for (const auto& [q, j] : sorted) out.push_back(j);
  return out;
}

}  // namespace

DestroySelection destroy_cheapest_facilities(const Solution& sol, int l_open, Rng& rng) {
  const Instance& inst = sol.instance();
  DestroySelection sel;
  sel.seed_facility = pick_seed_facility(sol, rng);
  const auto& seed_customers = sol.served_by(sel.seed_facility);

  std::vector<std::pair<double, int>> ranked;
  for (int j : sol.open_facilities()) {
    if (j == sel.seed_facility) continue;
    ranked.emplace_back(facility_quality(inst, j, seed_customers), j);
  }
  sel.open_facilities = lowest_quality(ranked, l_open);
  sel.open_facilities.push_back(sel.seed_facility);
  std::sort(sel.open_facilities.begin(), sel.open_facilities.end());
  return sel;
}

DestroySelection destroy_hybrid_customers(const Solution& sol, int l_open, Rng& rng) {
  const Instance& inst = sol.instance();
  DestroySelection sel;
  sel.seed_facility = pick_seed_facility(sol, rng);
  const int f = sel.seed_facility;
  const auto& seed_customers = sol.served_by(f);
  const int half = l_open / 2;

  // cheapest customers: candidates ranked by their own customers' average
  // cost against f's column
  std::vector<std::pair<double, int>> ranked;
  for (int j : sol.open_facilities()) {
    if (j == f) continue;
    ranked.emplace_back(facility_quality(inst, f, sol.served_by(j)), j);
  }
  const std::vector<int> cc = lowest_quality(ranked, half);

  // expensive customer: f's costliest customer, ties to the lower id
  int expensive = seed_customers.front();
  for (int i : seed_customers)
    if (inst.ship_cost(i, f) > inst.ship_cost(expensive, f)) expensive = i;

  const auto& expensive_servers = sol.assigned(expensive);
  std::vector<std::pair<double, int>> ec_ranked;
  for (int j : sol.open_facilities()) {
    if (j == f) continue;
    if (std::binary_search(expensive_servers.begin(), expensive_servers.end(), j)) continue;
    if (std::find(cc.begin(), cc.end(), j) != cc.end()) continue;
    ec_ranked.emplace_back(inst.ship_cost(expensive, j), j);
  }
  const std::vector<int> ec = lowest_quality(ec_ranked, half);

  sel.open_facilities = cc;
  sel.open_facilities.insert(sel.open_facilities.end(), ec.begin(), ec.end());
  sel.open_facilities.push_back(f);
  std::sort(sel.open_facilities.begin(), sel.open_facilities.end());
  return sel;
}

ClosedSelection select_closed(const Solution& sol, const std::vector<int>& fragment_customers,
                              int l_closed, double p_mc, Rng& rng) {
  ClosedSelection out;
  const auto closed = sol.closed_facilities();
  if (closed.empty() || l_closed <= 0) return out;

  out.used_min_cost = rng.unit() < p_mc;
  if (static_cast<int>(closed.size()) <= l_closed) {
    out.facilities = closed;
    return out;
  }

  if (out.used_min_cost && !fragment_customers.empty()) {
    std::vector<std::pair<double, int>> ranked;
    for (int g : closed)
      ranked.emplace_back(facility_quality(sol.instance(), g, fragment_customers), g);
    out.facilities = lowest_quality(ranked, l_closed);
  } else {
    const auto picks =
        rng.sample_without_replacement(static_cast<int>(closed.size()), l_closed);
    for (int p : picks) out.facilities.push_back(closed[static_cast<std::size_t>(p)]);
  }
  std::sort(out.facilities.begin(), out.facilities.end());
  return out;
}

SubProblem extract_subproblem(const Solution& sol, const std::vector<int>& open_selection,
                              const std::vector<int>& closed_selection) {
  const Instance& inst = sol.instance();
  SubProblem sp;

  for (int f : open_selection) {
    const auto& served = sol.served_by(f);
    sp.customers.insert(sp.customers.end(), served.begin(), served.end());
  }
  std::sort(sp.customers.begin(), sp.customers.end());
  sp.customers.erase(std::unique(sp.customers.begin(), sp.customers.end()), sp.customers.end());

  std::vector<char> in_fragment(static_cast<std::size_t>(inst.num_customers()), 0);
  for (int i : sp.customers) in_fragment[static_cast<std::size_t>(i)] = 1;

  std::vector<int> facility_ids(open_selection);
  facility_ids.insert(facility_ids.end(), closed_selection.begin(), closed_selection.end());
  for (int i : sp.customers)
    for (int j : sol.assigned(i)) facility_ids.push_back(j);
  std::sort(facility_ids.begin(), facility_ids.end());
  facility_ids.erase(std::unique(facility_ids.begin(), facility_ids.end()), facility_ids.end());

  double fragment_shipping = 0.0;
  for (int i : sp.customers) {
    const auto& a = sol.assigned(i);
    const auto& q = sol.quantities(i);
    for (std::size_t k = 0; k < a.size(); ++k)
      fragment_shipping += inst.ship_cost(i, a[k]) * static_cast<double>(q[k]);
  }

  double free_openings = 0.0;
  for (int j : facility_ids) {
    SubFacility sub;
    sub.facility = j;
    sub.open_at_extract = sol.is_open(j);
    Quantity inside = 0;
    for (int i : sol.served_by(j))
      if (in_fragment[static_cast<std::size_t>(i)]) inside += sol.shipment(i, j);
    sub.frozen_load = sol.load(j) - inside;
    sub.forced_open = sub.frozen_load > 0;
    if (sub.open_at_extract) ++sp.open_count;
    if (sub.open_at_extract && !sub.forced_open) free_openings += inst.opening_cost(j);
    sp.facilities.push_back(sub);
  }
  sp.baseline_cost = fragment_shipping + free_openings;
  sp.max_open = sp.open_count + 2;

  // local incompatibilities and arcs banned by frozen customers
  std::vector<int> local_of(static_cast<std::size_t>(inst.num_customers()), -1);
  for (int c = 0; c < sp.num_customers(); ++c)
    local_of[static_cast<std::size_t>(sp.customers[static_cast<std::size_t>(c)])] = c;

  for (const auto& [a, b] : inst.incompat_pairs())
    if (in_fragment[static_cast<std::size_t>(a)] && in_fragment[static_cast<std::size_t>(b)])
      sp.incompat.emplace_back(local_of[static_cast<std::size_t>(a)],
                               local_of[static_cast<std::size_t>(b)]);

  sp.forbidden.assign(static_cast<std::size_t>(sp.num_customers()) *
                          static_cast<std::size_t>(sp.num_facilities()),
                      0);
  for (int fl = 0; fl < sp.num_facilities(); ++fl) {
    const int j = sp.facilities[static_cast<std::size_t>(fl)].facility;
    for (int frozen : sol.served_by(j)) {
      if (in_fragment[static_cast<std::size_t>(frozen)]) continue;
      for (int enemy : inst.incompatible_with(frozen)) {
        const int lc = local_of[static_cast<std::size_t>(enemy)];
        if (lc >= 0)
          sp.forbidden[static_cast<std::size_t>(lc) * static_cast<std::size_t>(sp.num_facilities()) +
                       static_cast<std::size_t>(fl)] = 1;
      }
    }
  }
  return sp;
}

SubProblem whole_instance_subproblem(const Instance& inst) {
  SubProblem sp;
  sp.customers.resize(static_cast<std::size_t>(inst.num_customers()));
  for (int i = 0; i < inst.num_customers(); ++i) sp.customers[static_cast<std::size_t>(i)] = i;
  for (int j = 0; j < inst.num_facilities(); ++j) {
    SubFacility sub;
    sub.facility = j;
    sub.open_at_extract = true;  // the open cap must never bind here
    sp.facilities.push_back(sub);
  }
  sp.open_count = inst.num_facilities();
  sp.max_open = inst.num_facilities();
  sp.incompat = inst.incompat_pairs();
  sp.forbidden.assign(static_cast<std::size_t>(inst.num_customers()) *
                          static_cast<std::size_t>(inst.num_facilities()),
                      0);
  sp.baseline_cost = 0.0;
  return sp;
}

}  // namespace cflp
