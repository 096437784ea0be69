#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

#include "cflp/bench.hpp"
#include "cflp/construct.hpp"
#include "cflp/engine.hpp"
#include "cflp/instance.hpp"
#include "cflp/oracle.hpp"
#include "cflp/repair.hpp"
#include "cflp/solution.hpp"

namespace py = pybind11;
using namespace cflp;

namespace {

EngineConfig config_from_kwargs(const Instance& inst, const std::string& variant,
                                const std::string& timeout, double explicit_timeout_s,
                                std::uint64_t seed, bool simulated_clock, double t_g) {
  EngineConfig config;
  config.profile = default_profile(inst.num_facilities());
  if (timeout == "short") {
    config.timeout = {TimeoutRule::Kind::short_rule, 0.0};
  } else if (timeout == "long") {
    config.timeout = {TimeoutRule::Kind::long_rule, 0.0};
  } else if (timeout == "explicit") {
    config.timeout = {TimeoutRule::Kind::explicit_seconds, explicit_timeout_s};
  } else {
    throw std::invalid_argument("timeout must be 'short', 'long', or 'explicit'");
  }
  config.clock = simulated_clock ? ClockMode::simulated : ClockMode::wall;
  config.seed = seed;
  config.t_g = t_g;
  apply_variant(config, parse_variant(variant));
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "LNS solver for the multi-source capacitated facility location problem "
            "with customer incompatibilities";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ConstructError>(m, "ConstructError");

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("num_customers", &Instance::num_customers)
      .def_property_readonly("num_facilities", &Instance::num_facilities)
      .def("demand", &Instance::demand)
      .def("capacity", &Instance::capacity)
      .def("opening_cost", &Instance::opening_cost)
      .def("ship_cost", &Instance::ship_cost)
      .def_property_readonly("total_demand", &Instance::total_demand)
      .def_property_readonly("total_capacity", &Instance::total_capacity)
      .def_property_readonly("incompatible_pairs", &Instance::incompat_pairs)
      .def("incompatible", &Instance::incompatible)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& inst) {
        std::ostringstream os;
        os << "Instance(n=" << inst.num_customers() << ", m=" << inst.num_facilities()
           << ", pairs=" << inst.incompat_pairs().size() << ")";
        return os.str();
      });

  m.def("parse_instance", &parse_instance_text, py::arg("text"));
  m.def("load_instance", &load_instance_any, py::arg("path"),
        "Read an instance file, canonical or wlp/cflp-ci layout");
  m.def("serialize_instance", &serialize_instance_text, py::arg("instance"));
  m.def(
      "generate_instance",
      [](std::uint64_t seed, int n, int m, double density) {
        GeneratorParams params;
        params.n = n;
        params.m = m;
        params.incompat_density = density;
        return generate_instance(seed, params);
      },
      py::arg("seed"), py::arg("n"), py::arg("m"), py::arg("incompat_density") = 0.0);
  m.def("validate_feasibility_bound", [](const Instance& inst) {
    const auto r = validate_feasibility_bound(inst);
    return py::make_tuple(r.total_demand, r.total_capacity, r.holds);
  });

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("cost", &Solution::cost)
      .def_property_readonly("num_open", &Solution::num_open)
      .def("shipments",
           [](const Solution& sol) {
             std::vector<std::tuple<int, int, Quantity>> out;
             for (const auto& s : sol.shipments()) out.emplace_back(s.customer, s.facility, s.quantity);
             return out;
           })
      .def("audit", [](const Solution& sol) {
        std::vector<std::string> out;
        for (const auto& v : audit(sol.instance(), sol)) out.push_back(violation_to_string(v));
        return out;
      });

  m.def("construct_sorted_cost", &construct_sorted_cost, py::arg("instance"),
        py::arg("extra_facilities") = 5);
  m.def("construct_amortized_greedy", &construct_amortized_greedy, py::arg("instance"));
  m.def(
      "evaluate",
      [](const Instance& inst, const std::vector<std::tuple<int, int, Quantity>>& arcs) {
        std::vector<Shipment> shipments;
        for (const auto& [i, j, q] : arcs) shipments.push_back({i, j, q});
        return evaluate(inst, shipments);
      },
      py::arg("instance"), py::arg("shipments"));

  m.def("default_profile", [](int m_facilities) {
    const Profile p = default_profile(m_facilities);
    return py::make_tuple(p.nu, p.l_closed, p.p_mc, p.p_cf);
  });
  m.def("compute_gap", &compute_gap, py::arg("cost"), py::arg("best_known"));
  m.def("updated_weight", &updated_weight, py::arg("weight"), py::arg("lambda_"),
        py::arg("cum_improvements"), py::arg("cum_seconds"));

  m.def(
      "solve_exact_small",
      [](const Instance& inst) {
        const OracleResult r = solve_exact(inst);
        std::vector<std::tuple<int, int, Quantity>> arcs;
        for (const auto& s : r.shipments) arcs.emplace_back(s.customer, s.facility, s.quantity);
        return py::make_tuple(r.feasible, r.cost, arcs);
      },
      py::arg("instance"), "Brute-force optimum for instances with m<=4, n<=6");

  m.def(
      "solve_exact",
      [](const Instance& inst, double budget_seconds, bool two_source) {
        RepairLimits limits;
        limits.wall_seconds = budget_seconds;
        const auto out = solve_subproblem(inst, whole_instance_subproblem(inst),
                                          std::numeric_limits<double>::infinity(),
                                          CutoffMode::weak, two_source, limits);
        std::string status;
        switch (out.status) {
          case RepairStatus::improved: status = "optimal"; break;
          case RepairStatus::timeout_with_incumbent: status = "feasible"; break;
          case RepairStatus::infeasible: status = "infeasible"; break;
          default: status = "unknown"; break;
        }
        return py::make_tuple(status, out.cost, out.nodes);
      },
      py::arg("instance"), py::arg("budget_seconds") = 60.0, py::arg("two_source") = false,
      "Branch-and-bound on the whole instance; returns (status, cost, nodes)");

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("best_cost", &RunResult::best_cost)
      .def_readonly("iterations", &RunResult::iterations)
      .def_readonly("accepted", &RunResult::accepted)
      .def_readonly("repair_nodes", &RunResult::repair_nodes)
      .def_readonly("time_to_best_s", &RunResult::time_to_best_s)
      .def_readonly("elapsed_s", &RunResult::elapsed_s)
      .def_readonly("seed", &RunResult::seed)
      .def_property_readonly("best", [](const RunResult& r) { return r.best; })
      .def_property_readonly("trace", [](const RunResult& r) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : r.trace) out.emplace_back(p.elapsed_seconds, p.cost);
        return out;
      });

  m.def(
      "run_lns",
      [](const Instance& inst, const std::string& variant, const std::string& timeout,
         double timeout_seconds, std::uint64_t seed, bool simulated_clock, double t_g) {
        return run(inst, config_from_kwargs(inst, variant, timeout, timeout_seconds, seed,
                                            simulated_clock, t_g));
      },
      py::arg("instance"), py::arg("variant") = "init_accept", py::arg("timeout") = "explicit",
      py::arg("timeout_seconds") = 5.0, py::arg("seed") = 1,
      py::arg("simulated_clock") = false, py::arg("t_g") = 20.0);
}
