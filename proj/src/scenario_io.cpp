#include "menu_adapt/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "menu_adapt/errors.hpp"
#include "menu_adapt/format.hpp"

namespace menu_adapt {

const Scenario& ScenarioBundle::scenario(std::string_view name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return s;
  }
  throw ValidationError(ErrorKind::kUnknownLabel,
                        fmt::format("no scenario named '{}'", name));
}

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                              std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(ErrorKind::kSchema,
                          fmt::format("{} is missing \"{}\"", where, key));
  }
  return *it;
}

double require_ms(const nlohmann::json& obj, const char* key,
                  std::string_view where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) {
    throw ValidationError(ErrorKind::kSchema,
                          fmt::format("{}: \"{}\" must be a number", where, key));
  }
  return v.get<double>();
}

Scenario parse_scenario(const nlohmann::json& doc, std::size_t index) {
  const std::string where = fmt::format("scenario #{}", index + 1);
  if (!doc.is_object()) {
    throw ValidationError(ErrorKind::kSchema, where + " must be an object");
  }
  const auto& name = require(doc, "name", where);
  if (!name.is_string() || name.get<std::string>().empty()) {
    throw ValidationError(ErrorKind::kSchema,
                          where + ": \"name\" must be a non-empty string");
  }
  Scenario s;
  s.name = name.get<std::string>();
  s.costs = {require_ms(doc, "t_inspect_ms", s.name),
             require_ms(doc, "t_select_ms", s.name),
             require_ms(doc, "t_correct_ms", s.name)};
  s.costs.validate();
  if (auto mode = doc.find("benefit_mode"); mode != doc.end()) {
    if (!mode->is_string()) {
      throw ValidationError(ErrorKind::kSchema,
                            s.name + ": \"benefit_mode\" must be a string");
    }
    s.mode = parse_benefit_mode(mode->get<std::string>());
  }
  if (auto notes = doc.find("notes"); notes != doc.end()) {
    if (!notes->is_string()) {
      throw ValidationError(ErrorKind::kSchema,
                            s.name + ": \"notes\" must be a string");
    }
    s.notes = notes->get<std::string>();
  }
  return s;
}

// Whole milliseconds are written as integers so fixtures stay readable.
nlohmann::ordered_json number(double v) {
  if (std::trunc(v) == v && std::abs(v) < 1e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

}  // namespace

ScenarioBundle parse_bundle(const nlohmann::json& doc, bool renormalize) {
  if (!doc.is_object()) {
    throw ValidationError(ErrorKind::kSchema, "bundle must be a JSON object");
  }
  MenuTree menu = build_tree(require(doc, "menu", "bundle"));

  const auto& dist_doc = require(doc, "distribution", "bundle");
  if (!dist_doc.is_object()) {
    throw ValidationError(ErrorKind::kSchema,
                          "\"distribution\" must map leaf labels to numbers");
  }
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& [label, p] : dist_doc.items()) {
    if (!p.is_number()) {
      throw ValidationError(ErrorKind::kSchema,
                            "probability of '" + label + "' must be a number");
    }
    entries.emplace_back(label, p.get<double>());
  }
  TargetDistribution dist =
      TargetDistribution::from_labels(menu, entries, renormalize);

  const auto& scen_doc = require(doc, "scenarios", "bundle");
  if (!scen_doc.is_array() || scen_doc.empty()) {
    throw ValidationError(ErrorKind::kSchema,
                          "\"scenarios\" must be a non-empty array");
  }
  std::vector<Scenario> scenarios;
  std::set<std::string> names;
  for (std::size_t i = 0; i < scen_doc.size(); ++i) {
    Scenario s = parse_scenario(scen_doc[i], i);
    if (!names.insert(s.name).second) {
      throw ValidationError(ErrorKind::kDuplicateLabel,
                            "duplicate scenario name '" + s.name + "'");
    }
    scenarios.push_back(std::move(s));
  }
  return ScenarioBundle{std::move(menu), std::move(dist), std::move(scenarios)};
}

ScenarioBundle parse_bundle_text(std::string_view text, bool renormalize) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(ErrorKind::kSchema,
                          std::string("malformed JSON: ") + e.what());
  }
  return parse_bundle(doc, renormalize);
}

ScenarioBundle load_bundle(const std::filesystem::path& path,
                           bool renormalize) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError(ErrorKind::kFileNotFound,
                          "cannot read bundle '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bundle_text(buf.str(), renormalize);
}

nlohmann::ordered_json bundle_to_json(const ScenarioBundle& bundle) {
  nlohmann::ordered_json doc;
  doc["menu"] = to_json(bundle.menu);
  auto dist = nlohmann::ordered_json::object();
  for (NodeId leaf : bundle.menu.leaves()) {
    dist[bundle.menu.label(leaf)] = number(bundle.dist.mass(leaf));
  }
  doc["distribution"] = std::move(dist);
  auto scenarios = nlohmann::ordered_json::array();
  for (const auto& s : bundle.scenarios) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["t_inspect_ms"] = number(s.costs.t_inspect);
    j["t_select_ms"] = number(s.costs.t_select);
    j["t_correct_ms"] = number(s.costs.t_correct);
    j["benefit_mode"] = std::string(to_string(s.mode));
    if (s.notes) j["notes"] = *s.notes;
    scenarios.push_back(std::move(j));
  }
  doc["scenarios"] = std::move(scenarios);
  return doc;
}

std::string serialize_bundle(const ScenarioBundle& bundle) {
  return bundle_to_json(bundle).dump(2) + "\n";
}

void SweepGrid::validate() const {
  if (t_inspect.empty() || t_select.empty()) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "sweep grid needs at least one t_inspect and one "
                          "t_select value");
  }
  for (const auto& p : points()) p.validate();
}

std::vector<CostParams> SweepGrid::points() const {
  std::vector<CostParams> out;
  for (double ti : t_inspect) {
    for (double ts : t_select) {
      if (t_correct.empty()) {
        out.push_back({ti, ts, ts});
      } else {
        for (double tc : t_correct) out.push_back({ti, ts, tc});
      }
    }
  }
  return out;
}

SweepGrid scenario3_grid() {
  return {{500, 1000, 1500, 2000, 2500, 3000}, {500, 1000, 1500}, {}};
}

std::vector<SweepRow> run_sweep(const MenuTree& tree,
                                const TargetDistribution& dist,
                                const SweepGrid& grid,
                                std::span<const BenefitMode> modes) {
  grid.validate();
  std::vector<SweepRow> rows;
  for (const auto& costs : grid.points()) {
    for (BenefitMode mode : modes) {
      const auto result = select_adaptation(utility_table(tree, costs, dist, mode));
      rows.push_back({costs, mode, result.selected, result.utility});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const MenuTree& tree,
                     std::span<const SweepRow> rows) {
  os << "t_inspect_ms,t_select_ms,t_correct_ms,mode,selected,utility_ms\n";
  for (const auto& r : rows) {
    os << format_ms(r.costs.t_inspect) << ',' << format_ms(r.costs.t_select)
       << ',' << format_ms(r.costs.t_correct) << ',' << to_string(r.mode) << ','
       << csv_field(tree.label(r.selected)) << ',' << format_ms(r.utility)
       << '\n';
  }
}

}  // namespace menu_adapt
