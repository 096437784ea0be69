#include "cflp/solution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace cflp {

double evaluate(const Instance& inst, const std::vector<Shipment>& shipments) {
  double shipping = 0.0;
  std::vector<char> used(static_cast<std::size_t>(inst.num_facilities()), 0);
  for (const auto& s : shipments) {
    if (s.quantity == 0) continue;
    shipping += inst.ship_cost(s.customer, s.facility) * static_cast<double>(s.quantity);
    used[static_cast<std::size_t>(s.facility)] = 1;
  }
  double opening = 0.0;
  for (int j = 0; j < inst.num_facilities(); ++j)
    if (used[static_cast<std::size_t>(j)]) opening += inst.opening_cost(j);
  return shipping + opening;
}

Solution::Solution(const Instance& inst)
    : inst_(&inst),
      assigned_(static_cast<std::size_t>(inst.num_customers())),
      qty_(static_cast<std::size_t>(inst.num_customers())),
      served_(static_cast<std::size_t>(inst.num_facilities())),
      load_(static_cast<std::size_t>(inst.num_facilities()), 0),
      open_(static_cast<std::size_t>(inst.num_facilities()), 0) {}

std::vector<int> Solution::open_facilities() const {
  std::vector<int> out;
  for (int j = 0; j < inst_->num_facilities(); ++j)
    if (open_[static_cast<std::size_t>(j)]) out.push_back(j);
  return out;
}

std::vector<int> Solution::closed_facilities() const {
  std::vector<int> out;
  for (int j = 0; j < inst_->num_facilities(); ++j)
    if (!open_[static_cast<std::size_t>(j)]) out.push_back(j);
  return out;
}

Quantity Solution::shipment(int i, int j) const {
  const auto& a = assigned_[static_cast<std::size_t>(i)];
  const auto it = std::lower_bound(a.begin(), a.end(), j);
  if (it == a.end() || *it != j) return 0;
  return qty_[static_cast<std::size_t>(i)][static_cast<std::size_t>(it - a.begin())];
}

std::vector<Shipment> Solution::shipments() const {
  std::vector<Shipment> out;
  for (int i = 0; i < inst_->num_customers(); ++i) {
    const auto& a = assigned_[static_cast<std::size_t>(i)];
    const auto& q = qty_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back({i, a[k], q[k]});
  }
  return out;
}

void Solution::add_shipment(int i, int j, Quantity delta) {
  if (delta == 0) return;
  auto& a = assigned_[static_cast<std::size_t>(i)];
  auto& q = qty_[static_cast<std::size_t>(i)];
  const auto it = std::lower_bound(a.begin(), a.end(), j);
  const auto pos = static_cast<std::size_t>(it - a.begin());
  Quantity now;
  if (it != a.end() && *it == j) {
    now = q[pos] + delta;
    if (now == 0) {
      a.erase(a.begin() + static_cast<std::ptrdiff_t>(pos));
      q.erase(q.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      q[pos] = now;
    }
  } else {
    now = delta;
    a.insert(a.begin() + static_cast<std::ptrdiff_t>(pos), j);
    q.insert(q.begin() + static_cast<std::ptrdiff_t>(pos), delta);
  }

  auto& served = served_[static_cast<std::size_t>(j)];
  const auto sit = std::lower_bound(served.begin(), served.end(), i);
  const bool listed = sit != served.end() && *sit == i;
  if (now > 0 && !listed) served.insert(sit, i);
  if (now == 0 && listed) served.erase(sit);

  load_[static_cast<std::size_t>(j)] += delta;
  cost_ += inst_->ship_cost(i, j) * static_cast<double>(delta);

  const bool should_open = load_[static_cast<std::size_t>(j)] > 0;
  if (should_open && !open_[static_cast<std::size_t>(j)]) {
    open_[static_cast<std::size_t>(j)] = 1;
    ++num_open_;
    cost_ += inst_->opening_cost(j);
  } else if (!should_open && open_[static_cast<std::size_t>(j)]) {
    open_[static_cast<std::size_t>(j)] = 0;
    --num_open_;
    cost_ -= inst_->opening_cost(j);
  }
}

double Solution::recompute_cost() const { return evaluate(*inst_, shipments()); }

bool Solution::apply_repair(const SubProblem& sp, const std::vector<FragmentArc>& fragment,
                            std::string* why) {
  const auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };

  const int nc = sp.num_customers();
  const int nf = sp.num_facilities();

  std::vector<Quantity> customer_total(static_cast<std::size_t>(nc), 0);
  std::vector<Quantity> facility_total(static_cast<std::size_t>(nf), 0);
  std::vector<std::vector<char>> uses(static_cast<std::size_t>(nf),
                                      std::vector<char>(static_cast<std::size_t>(nc), 0));

  for (const auto& arc : fragment) {
    if (arc.customer < 0 || arc.customer >= nc || arc.facility < 0 || arc.facility >= nf)
      return fail("fragment arc index out of range");
    if (arc.quantity <= 0) return fail("fragment arc with non-positive quantity");
    if (sp.arc_forbidden(arc.customer, arc.facility)) return fail("fragment uses a forbidden arc");
    customer_total[static_cast<std::size_t>(arc.customer)] += arc.quantity;
    facility_total[static_cast<std::size_t>(arc.facility)] += arc.quantity;
    if (uses[static_cast<std::size_t>(arc.facility)][static_cast<std::size_t>(arc.customer)])
      return fail("fragment repeats a customer-facility arc");
    uses[static_cast<std::size_t>(arc.facility)][static_cast<std::size_t>(arc.customer)] = 1;
  }

  for (int c = 0; c < nc; ++c)
    if (customer_total[static_cast<std::size_t>(c)] != inst_->demand(sp.customers[static_cast<std::size_t>(c)]))
      return fail("fragment does not meet demand of customer " +
                  std::to_string(sp.customers[static_cast<std::size_t>(c)] + 1));

  int opened = 0;
  for (int f = 0; f < nf; ++f) {
    const auto& sub = sp.facilities[static_cast<std::size_t>(f)];
    if (facility_total[static_cast<std::size_t>(f)] >
        inst_->capacity(sub.facility) - sub.frozen_load)
      return fail("fragment exceeds free capacity of facility " + std::to_string(sub.facility + 1));
    if (facility_total[static_cast<std::size_t>(f)] > 0 || sub.forced_open) ++opened;
  }
  if (opened > sp.max_open) return fail("fragment opens more facilities than the cap allows");

  for (const auto& [c1, c2] : sp.incompat)
    for (int f = 0; f < nf; ++f)
      if (uses[static_cast<std::size_t>(f)][static_cast<std::size_t>(c1)] &&
          uses[static_cast<std::size_t>(f)][static_cast<std::size_t>(c2)])
        return fail("fragment serves incompatible customers " +
                    std::to_string(sp.customers[static_cast<std::size_t>(c1)] + 1) + " and " +
                    std::to_string(sp.customers[static_cast<std::size_t>(c2)] + 1) +
                    " from facility " +
                    std::to_string(sp.facilities[static_cast<std::size_t>(f)].facility + 1));

  // contract holds; swap the fragment in
  for (int c = 0; c < nc; ++c) {
    const int i = sp.customers[static_cast<std::size_t>(c)];
    auto facs = assigned_[static_cast<std::size_t>(i)];
    auto qs = qty_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < facs.size(); ++k) add_shipment(i, facs[k], -qs[k]);
  }
  for (const auto& arc : fragment)
    add_shipment(sp.customers[static_cast<std::size_t>(arc.customer)],
                 sp.facilities[static_cast<std::size_t>(arc.facility)].facility, arc.quantity);
  return true;
}

std::vector<Violation> audit(const Instance& inst, const Solution& sol) {
  std::vector<Violation> out;
  const int n = inst.num_customers();
  const int m = inst.num_facilities();

  std::vector<Quantity> load(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < n; ++i) {
    const auto& a = sol.assigned(i);
    const auto& q = sol.quantities(i);
    if (a.size() != q.size()) {
      out.push_back({Violation::Kind::index_inconsistency, i, -1, "assigned/quantities length mismatch"});
      continue;
    }
    Quantity total = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (q[k] <= 0)
        out.push_back({Violation::Kind::nonpositive_quantity, i, a[k], "non-positive stored quantity"});
      if (k + 1 < a.size() && a[k] >= a[k + 1])
        out.push_back({Violation::Kind::index_inconsistency, i, a[k], "assigned list not strictly ascending"});
      total += q[k];
      load[static_cast<std::size_t>(a[k])] += q[k];
      const auto& served = sol.served_by(a[k]);
      if (!std::binary_search(served.begin(), served.end(), i))
        out.push_back({Violation::Kind::index_inconsistency, i, a[k], "customer missing from served list"});
    }
    if (total != inst.demand(i))
      out.push_back({Violation::Kind::demand_mismatch, i, -1,
                     "served " + std::to_string(total) + " of demand " + std::to_string(inst.demand(i))});
  }

  for (int j = 0; j < m; ++j) {
    if (load[static_cast<std::size_t>(j)] > inst.capacity(j))
      out.push_back({Violation::Kind::capacity_exceeded, -1, j,
                     "load " + std::to_string(load[static_cast<std::size_t>(j)]) + " over capacity " +
                         std::to_string(inst.capacity(j))});
    if (load[static_cast<std::size_t>(j)] != sol.load(j))
      out.push_back({Violation::Kind::index_inconsistency, -1, j, "stored load differs from shipments"});
    if (sol.is_open(j) != (load[static_cast<std::size_t>(j)] > 0))
      out.push_back({Violation::Kind::index_inconsistency, -1, j, "open flag out of step with load"});
    for (int i : sol.served_by(j))
      if (sol.shipment(i, j) <= 0)
        out.push_back({Violation::Kind::index_inconsistency, i, j, "served list entry without shipment"});
  }

  for (const auto& [i1, i2] : inst.incompat_pairs()) {
    const auto& a1 = sol.assigned(i1);
    const auto& a2 = sol.assigned(i2);
    for (int j : a1)
      if (std::binary_search(a2.begin(), a2.end(), j))
        out.push_back({Violation::Kind::incompatible_shared_facility, i1, j,
                       "shared with incompatible customer " + std::to_string(i2 + 1)});
  }

  const double fresh = sol.recompute_cost();
  const double denom = std::max(1.0, std::abs(fresh));
  if (std::abs(fresh - sol.cost()) / denom > 1e-6)
    out.push_back({Violation::Kind::cost_drift, -1, -1,
                   "cached " + std::to_string(sol.cost()) + " vs recomputed " + std::to_string(fresh)});

  return out;
}

std::string violation_to_string(const Violation& v) {
  std::string name;
  switch (v.kind) {
    case Violation::Kind::demand_mismatch: name = "demand_mismatch"; break;
    case Violation::Kind::capacity_exceeded: name = "capacity_exceeded"; break;
    case Violation::Kind::incompatible_shared_facility: name = "incompatible_shared_facility"; break;
    case Violation::Kind::nonpositive_quantity: name = "nonpositive_quantity"; break;
    case Violation::Kind::index_inconsistency: name = "index_inconsistency"; break;
    case Violation::Kind::cost_drift: name = "cost_drift"; break;
  }
  std::string where;
  if (v.customer >= 0) where += " customer " + std::to_string(v.customer + 1);
  if (v.facility >= 0) where += " facility " + std::to_string(v.facility + 1);
  return name + where + (v.detail.empty() ? "" : ": " + v.detail);
}

void write_solution(const Solution& sol, std::ostream& out) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), sol.cost());
  out << std::string(buf, ptr) << '\n';
  for (const auto& s : sol.shipments())
    out << s.customer + 1 << ' ' << s.facility + 1 << ' ' << s.quantity << '\n';
}

Solution read_solution(const Instance& inst, std::istream& in) {
  Solution sol(inst);
  double stated = 0.0;
  if (!(in >> stated)) throw ParseError(1, "missing objective line in solution");
  int i = 0, j = 0;
  Quantity q = 0;
  while (in >> i >> j >> q) {
    if (i < 1 || i > inst.num_customers() || j < 1 || j > inst.num_facilities())
      throw ParseError(0, "solution shipment index out of range");
    sol.add_shipment(i - 1, j - 1, q);
  }
  return sol;
}

}  // namespace cflp
