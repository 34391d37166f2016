#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <rrsp/approx.hpp>
#include <rrsp/error.hpp>
#include <rrsp/gen.hpp>
#include <rrsp/instance_io.hpp>
#include <rrsp/mip.hpp>
#include <rrsp/oracle.hpp>
#include <rrsp/recsolve.hpp>
#include <rrsp/secondstage.hpp>

namespace py = pybind11;
using namespace rrsp;

namespace {

NeighborhoodKind neighborhood_arg(const std::string& text) {
  const auto kind = parse_neighborhood(text);
  if (!kind) throw Error(ErrorKind::Usage, "unknown neighborhood " + text);
  return *kind;
}

Uncertainty uncertainty_arg(const std::string& kind, double budget) {
  if (kind == "interval") return IntervalUncertainty{};
  if (kind == "discrete") return DiscreteBudget{static_cast<int>(budget)};
  if (kind == "continuous") return ContinuousBudget{budget};
  throw Error(ErrorKind::Usage, "unknown uncertainty " + kind);
}

Instance make_instance(int nodes, const std::vector<std::pair<NodeId, NodeId>>& arcs, NodeId source,
                       NodeId sink, std::vector<double> first_stage, std::vector<double> nominal,
                       std::vector<double> deviation, int k, const std::string& neighborhood,
                       const std::string& uncertainty, double budget, const std::string& label) {
  std::vector<Arc> list;
  list.reserve(arcs.size());
  for (auto [t, h] : arcs) list.push_back({t, h});
  Instance inst;
  inst.graph = Multidigraph(nodes, std::move(list), source, sink);
  inst.first_stage = std::move(first_stage);
  inst.nominal = std::move(nominal);
  inst.deviation = std::move(deviation);
  inst.k = k;
  inst.neighborhood = neighborhood_arg(neighborhood);
  inst.uncertainty = uncertainty_arg(uncertainty, budget);
  inst.label = label;
  require_valid(inst);
  return inst;
}

py::dict solution_dict(const Solution& s) {
  py::dict d;
  d["value"] = s.value;
  d["first_stage"] = s.first_stage.arcs;
  d["second_stage"] = s.second_stage.arcs;
  d["method"] = s.solver;
  if (s.witness) d["witness"] = s.witness->cost;
  return d;
}

Solution solve_any(const Instance& inst, const std::string& method, bool parallel, std::size_t cap) {
  const auto m = parse_method(method);
  if (!m) throw Error(ErrorKind::Usage, "unknown method " + method);
  if (*m == Method::Oracle && !std::holds_alternative<IntervalUncertainty>(inst.uncertainty))
    return oracle_recrob(inst, cap);
  return solve(inst, {.method = *m, .parallel = parallel, .oracle_cap = cap});
}

Instance generate_family(const std::string& family, int size, std::uint64_t seed, int k,
                         const std::string& neighborhood, const std::string& uncertainty,
                         double budget, bool relative, double density, double probability,
                         int width) {
  GenParams p;
  if (family == "layered") p.family = LayeredFamily{size, width, density};
  else if (family == "random-dag") p.family = RandomDagFamily{size, probability};
  else if (family == "asp") p.family = AspFamily{size, 0.5};
  else throw Error(ErrorKind::Usage, "unknown family " + family);
  p.seed = seed;
  p.k_min = p.k_max = k;
  p.neighborhood = neighborhood_arg(neighborhood);
  if (uncertainty == "interval") p.budget.kind = BudgetKind::Interval;
  else if (uncertainty == "discrete") p.budget.kind = BudgetKind::Discrete;
  else if (uncertainty == "continuous") p.budget.kind = BudgetKind::Continuous;
  else throw Error(ErrorKind::Usage, "unknown uncertainty " + uncertainty);
  p.budget.value = budget;
  p.budget.relative = relative;
  return generate(p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Recoverable robust shortest path solvers";

  static py::exception<Error> error(m, "RrspError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, ("[" + std::string(to_string(e.kind())) + "] " + e.what()).c_str());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", [](const std::string& text) { return parse_instance(text); })
      .def_static("load", &load_instance)
      .def("to_json", &serialize_instance)
      .def("save", [](const Instance& inst, const std::string& path) { save_instance(inst, path); })
      .def_property_readonly("node_count", [](const Instance& i) { return i.graph.node_count(); })
      .def_property_readonly("arc_count", &Instance::arc_count)
      .def_property_readonly("arcs",
                             [](const Instance& i) {
                               std::vector<std::pair<NodeId, NodeId>> out;
                               for (const Arc& a : i.graph.arcs()) out.emplace_back(a.tail, a.head);
                               return out;
                             })
      .def_readonly("first_stage", &Instance::first_stage)
      .def_readonly("nominal", &Instance::nominal)
      .def_readonly("deviation", &Instance::deviation)
      .def_readonly("k", &Instance::k)
      .def_readonly("label", &Instance::label)
      .def_property_readonly("neighborhood",
                             [](const Instance& i) { return std::string(to_string(i.neighborhood)); })
      .def_property_readonly("uncertainty", [](const Instance& i) { return describe(i.uncertainty); })
      .def_property_readonly("structure",
                             [](const Instance& i) { return std::string(to_string(classify(i.graph).kind)); })
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.label + " n=" + std::to_string(i.graph.node_count()) +
               " m=" + std::to_string(i.arc_count()) + ">";
      });

  m.def("make_instance", &make_instance, py::arg("nodes"), py::arg("arcs"), py::arg("source"),
        py::arg("sink"), py::arg("first_stage"), py::arg("nominal"), py::arg("deviation"),
        py::arg("k") = 0, py::arg("neighborhood") = "incl", py::arg("uncertainty") = "interval",
        py::arg("budget") = 0.0, py::arg("label") = "");

  m.def(
      "solve",
      [](const Instance& inst, const std::string& method, bool parallel, std::size_t cap) {
        Solution s;
        {
          py::gil_scoped_release release;
          s = solve_any(inst, method, parallel, cap);
        }
        return solution_dict(s);
      },
      py::arg("instance"), py::arg("method") = "auto", py::arg("parallel") = false,
      py::arg("cap") = kDefaultPathCap);

  m.def(
      "evaluate",
      [](const Instance& inst, const std::vector<ArcId>& first_stage) {
        const auto ev = evaluate_objective(inst, Path{first_stage});
        py::dict d;
        d["value"] = ev.value;
        d["recovery"] = ev.recovery.arcs;
        d["witness"] = ev.witness.cost;
        d["method"] = ev.method;
        return d;
      },
      py::arg("instance"), py::arg("first_stage"));

  m.def(
      "approx",
      [](const Instance& inst) {
        const auto r = approx_solve(inst);
        py::dict d;
        d["first_stage"] = r.first_stage.arcs;
        d["recovery"] = r.recovery.arcs;
        d["value"] = r.value;
        d["value_exact"] = r.value_exact;
        d["ratio"] = r.ratio;
        d["certificate"] = r.certificate;
        py::dict certs;
        for (const auto& c : r.certificates) certs[py::str(c.kind)] = c.ratio;
        d["certificates"] = certs;
        return d;
      },
      py::arg("instance"));

  m.def(
      "lp_text",
      [](const Instance& inst, const std::string& model) {
        if (model == "interval") return export_lp(build_interval_mip(inst));
        if (model == "cont-budget") return export_lp(build_continuous_budget_mip(inst));
        throw Error(ErrorKind::Usage, "unknown model " + model);
      },
      py::arg("instance"), py::arg("model") = "interval");

  m.def("generate", &generate_family, py::arg("family") = "layered", py::arg("size") = 4,
        py::arg("seed") = 1, py::arg("k") = 1, py::arg("neighborhood") = "incl",
        py::arg("uncertainty") = "interval", py::arg("budget") = 0.0, py::arg("relative") = false,
        py::arg("density") = 0.6, py::arg("probability") = 0.4, py::arg("width") = 3);
}
