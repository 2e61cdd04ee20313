#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "menu_adapt/adaptation.hpp"
#include "menu_adapt/errors.hpp"
#include "menu_adapt/interaction_sim.hpp"
#include "menu_adapt/menu_model.hpp"
#include "menu_adapt/oracle.hpp"
#include "menu_adapt/scenario_io.hpp"

namespace py = pybind11;
using namespace menu_adapt;

namespace {

// Python callers address nodes by label.
NodeId id_of(const MenuTree& tree, const std::string& label) {
  return tree.at(label);
}

py::dict entry_to_dict(const MenuTree& tree, const UtilityEntry& e) {
  py::dict d;
  d["node"] = tree.label(e.node);
  d["depth"] = e.depth;
  d["p"] = e.p;
  d["expected_cost_ms"] = e.expected_cost;
  d["benefit_ms"] = e.benefit;
  d["utility_ms"] = e.utility;
  return d;
}

}  // namespace

PYBIND11_MODULE(_menu_adapt, m) {
  m.doc() = "Cost-aware adaptation of hierarchical menus";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation",
                                             PyExc_RuntimeError);

  py::enum_<BenefitMode>(m, "BenefitMode")
      .value("LITERAL", BenefitMode::kLiteral)
      .value("SINGLE_P", BenefitMode::kSingleP);

  py::class_<CostParams>(m, "CostParams")
      .def(py::init([](double ti, double ts, double tc) {
             CostParams c{ti, ts, tc};
             c.validate();
             return c;
           }),
           py::arg("t_inspect"), py::arg("t_select"), py::arg("t_correct"))
      .def_readonly("t_inspect", &CostParams::t_inspect)
      .def_readonly("t_select", &CostParams::t_select)
      .def_readonly("t_correct", &CostParams::t_correct)
      .def("__repr__", [](const CostParams& c) {
        std::ostringstream os;
        os << "CostParams(" << c.t_inspect << ", " << c.t_select << ", "
           << c.t_correct << ")";
        return os.str();
      });

  py::class_<MenuTree>(m, "MenuTree")
      .def_static("from_json",
                  [](const std::string& text) {
                    return build_tree(nlohmann::json::parse(text));
                  })
      .def("__len__", &MenuTree::size)
      .def_property_readonly(
          "root", [](const MenuTree& t) { return t.label(t.root()); })
      .def("labels",
           [](const MenuTree& t) {
             std::vector<std::string> out;
             for (const auto& n : t.nodes()) out.push_back(n.label);
             return out;
           })
      .def("leaves",
           [](const MenuTree& t) {
             std::vector<std::string> out;
             for (NodeId id : t.leaves()) out.push_back(t.label(id));
             return out;
           })
      .def("depth", [](const MenuTree& t,
                       const std::string& l) { return t.depth(id_of(t, l)); })
      .def("children",
           [](const MenuTree& t, const std::string& l) {
             std::vector<std::string> out;
             for (NodeId c : t.children(id_of(t, l))) out.push_back(t.label(c));
             return out;
           })
      .def("lca",
           [](const MenuTree& t, const std::string& a, const std::string& b) {
             return t.label(lca(t, id_of(t, a), id_of(t, b)));
           })
      .def("child_position", [](const MenuTree& t, const std::string& parent,
                                const std::string& child) {
        return child_position(t, id_of(t, parent), id_of(t, child));
      });

  py::class_<TargetDistribution>(m, "TargetDistribution")
      .def_static(
          "from_dict",
          [](const MenuTree& tree, const std::map<std::string, double>& d,
             bool renormalize) {
            std::vector<std::pair<std::string, double>> entries(d.begin(),
                                                                d.end());
            return TargetDistribution::from_labels(tree, entries, renormalize);
          },
          py::arg("tree"), py::arg("masses"), py::arg("renormalize") = false)
      .def("total", &TargetDistribution::total);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("costs", &Scenario::costs)
      .def_readonly("mode", &Scenario::mode)
      .def_readonly("notes", &Scenario::notes);

  py::class_<ScenarioBundle>(m, "ScenarioBundle")
      .def_readonly("menu", &ScenarioBundle::menu)
      .def_readonly("distribution", &ScenarioBundle::dist)
      .def_readonly("scenarios", &ScenarioBundle::scenarios)
      .def("scenario", &ScenarioBundle::scenario,
           py::return_value_policy::reference_internal)
      .def("serialize", &serialize_bundle);

  m.def("load_bundle", &load_bundle, py::arg("path"),
        py::arg("renormalize") = false);
  m.def("parse_bundle",
        [](const std::string& text, bool renormalize) {
          return parse_bundle_text(text, renormalize);
        },
        py::arg("text"), py::arg("renormalize") = false);

  m.def("subtree_mass",
        [](const MenuTree& t, const TargetDistribution& d,
           const std::string& k) { return subtree_mass(t, d, id_of(t, k)); });

  m.def("simulate_trace",
        [](const MenuTree& t, const CostParams& c, const std::string& start,
           const std::string& target) {
          std::vector<std::tuple<std::string, std::string, double>> out;
          const auto trace =
              simulate_trace(t, c, id_of(t, start), id_of(t, target));
          for (const auto& e : trace.events) {
            out.emplace_back(std::string(to_string(e.kind)), t.label(e.node),
                             e.cost);
          }
          return out;
        });
  m.def("interaction_cost", [](const MenuTree& t, const CostParams& c,
                               const std::string& start,
                               const std::string& target) {
    return interaction_cost(t, c, id_of(t, start), id_of(t, target));
  });
  m.def("naive_cost", [](const MenuTree& t, const CostParams& c,
                         const std::string& start, const std::string& target) {
    return oracle::naive_cost(t, c, id_of(t, start), id_of(t, target));
  });

  m.def("utility_table",
        [](const MenuTree& t, const CostParams& c, const TargetDistribution& d,
           BenefitMode mode) {
          py::list rows;
          for (const auto& e : utility_table(t, c, d, mode).entries) {
            rows.append(entry_to_dict(t, e));
          }
          return rows;
        },
        py::arg("tree"), py::arg("costs"), py::arg("dist"),
        py::arg("mode") = kDefaultBenefitMode);
  m.def("select_adaptation",
        [](const MenuTree& t, const CostParams& c, const TargetDistribution& d,
           BenefitMode mode) {
          const auto r = select_adaptation(utility_table(t, c, d, mode));
          return py::make_tuple(t.label(r.selected), r.utility, r.tie_broken);
        },
        py::arg("tree"), py::arg("costs"), py::arg("dist"),
        py::arg("mode") = kDefaultBenefitMode);
  m.def("greedy_adaptation", [](const MenuTree& t, const TargetDistribution& d) {
    return t.label(greedy_adaptation(t, d));
  });
  m.def("expected_selection_time",
        [](const MenuTree& t, const CostParams& c, const TargetDistribution& d,
           const std::string& k) {
          return expected_selection_time(t, c, d, id_of(t, k));
        });
  m.def("monte_carlo_expected_time",
        [](const MenuTree& t, const CostParams& c, const TargetDistribution& d,
           const std::string& k, std::uint64_t samples, std::uint64_t seed) {
          const auto est =
              monte_carlo_expected_time(t, c, d, id_of(t, k), samples, seed);
          return py::make_tuple(est.mean, est.sample_std, est.standard_error());
        },
        py::arg("tree"), py::arg("costs"), py::arg("dist"),
        py::arg("adaptation"), py::arg("samples") = 100000,
        py::arg("seed") = 42);
}
