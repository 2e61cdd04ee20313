#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "menu_adapt/adaptation.hpp"
#include "menu_adapt/interaction_sim.hpp"
#include "menu_adapt/menu_model.hpp"

namespace menu_adapt {

struct Scenario {
  std::string name;
  CostParams costs;
  BenefitMode mode = kDefaultBenefitMode;
  std::optional<std::string> notes;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioBundle {
  MenuTree menu;
  TargetDistribution dist;
  std::vector<Scenario> scenarios;

  // Throws ValidationError(kUnknownLabel) when absent.
  const Scenario& scenario(std::string_view name) const;

  friend bool operator==(const ScenarioBundle&, const ScenarioBundle&) = default;
};

// {"menu": <menu>, "distribution": {leaf: p, ...},
//  "scenarios": [{"name", "t_inspect_ms", "t_select_ms", "t_correct_ms",
//                 "benefit_mode", "notes"?}]}
ScenarioBundle parse_bundle(const nlohmann::json& doc, bool renormalize = false);
ScenarioBundle parse_bundle_text(std::string_view text,
                                 bool renormalize = false);
ScenarioBundle load_bundle(const std::filesystem::path& path,
                           bool renormalize = false);

// Canonical form: fixed key order, distribution in leaf pre-order, numbers
// in shortest round-trip notation.
nlohmann::ordered_json bundle_to_json(const ScenarioBundle& bundle);
std::string serialize_bundle(const ScenarioBundle& bundle);

// A cost grid. An empty t_correct list ties t_correct to t_select.
struct SweepGrid {
  std::vector<double> t_inspect;
  std::vector<double> t_select;
  std::vector<double> t_correct;

  // Throws ValidationError(kInvalidArgument) for an empty axis or a bad cost.
  void validate() const;
  std::vector<CostParams> points() const;
};

// High inspection cost, equal and moderate selection/correction costs.
SweepGrid scenario3_grid();

struct SweepRow {
  CostParams costs;
  BenefitMode mode;
  NodeId selected;
  double utility = 0.0;
};

// One row per grid point per mode, grid-major.
std::vector<SweepRow> run_sweep(const MenuTree& tree,
                                const TargetDistribution& dist,
                                const SweepGrid& grid,
                                std::span<const BenefitMode> modes);

// CSV `t_inspect_ms,t_select_ms,t_correct_ms,mode,selected,utility_ms`.
void write_sweep_csv(std::ostream& os, const MenuTree& tree,
                     std::span<const SweepRow> rows);

}  // namespace menu_adapt
