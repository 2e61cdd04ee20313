#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "menu_adapt/menu_model.hpp"

namespace menu_adapt {

// Time-based costs of the three user actions, in milliseconds.
struct CostParams {
  double t_inspect = 0.0;
  double t_select = 0.0;
  double t_correct = 0.0;

  // Throws ValidationError(kInvalidCost) unless all are finite and >= 0.
  void validate() const;

  CostParams scaled(double c) const {
    return {t_inspect * c, t_select * c, t_correct * c};
  }

  friend bool operator==(const CostParams&, const CostParams&) = default;
};

enum class ActionKind { kInspect, kSelect, kCorrect };

std::string_view to_string(ActionKind kind);

struct ActionEvent {
  ActionKind kind;
  // Item inspected or selected; for a correction, the menu left behind.
  NodeId node;
  double cost = 0.0;

  friend bool operator==(const ActionEvent&, const ActionEvent&) = default;
};

struct ActionTrace {
  NodeId start;
  NodeId target;
  std::vector<ActionEvent> events;
};

struct ActionCounts {
  long inspect = 0;
  long select = 0;
  long correct = 0;

  double price(const CostParams& costs) const {
    return static_cast<double>(inspect) * costs.t_inspect +
           static_cast<double>(select) * costs.t_select +
           static_cast<double>(correct) * costs.t_correct;
  }

  friend bool operator==(const ActionCounts&, const ActionCounts&) = default;
};

// What a user pays when the adaptation lands directly on their target leaf.
enum class LeafConfirmation {
  kInspect,  // one inspection to recognise the pre-selected action
  kFree,
};

// Serial-search walk from `start` to the leaf `target`:
//  - a leaf start is inspected; if it is not the target the user corrects
//    back to its parent menu;
//  - a menu holding nothing on the path to the target is scanned in full,
//    then left with a correction;
//  - in every menu on the path the user inspects items 1..pos of the
//    relevant child and selects it.
// Starting on a menu costs nothing by itself.
ActionTrace simulate_trace(const MenuTree& tree, const CostParams& costs,
                           NodeId start, NodeId target,
                           LeafConfirmation confirm = LeafConfirmation::kInspect);

double trace_cost(const ActionTrace& trace);

ActionCounts count_actions(const ActionTrace& trace);

// Closed-form action counts of the walk simulate_trace() produces.
ActionCounts action_counts(const MenuTree& tree, NodeId start, NodeId target,
                           LeafConfirmation confirm = LeafConfirmation::kInspect);

// Closed-form total of the same walk: backtracking levels plus search levels,
// priced from action_counts(). Equal to trace_cost(simulate_trace(...)).
double interaction_cost(const MenuTree& tree, const CostParams& costs,
                        NodeId start, NodeId target,
                        LeafConfirmation confirm = LeafConfirmation::kInspect);

// Search-and-select cost from the root down to any node k, selecting k
// itself. Zero for the root.
double search_cost_from_root(const MenuTree& tree, const CostParams& costs,
                             NodeId k);

// One event per line as `<KIND> <label> <cost_ms>`, then `TOTAL <ms>`.
// Costs use three decimals.
void write_trace(std::ostream& os, const MenuTree& tree,
                 const ActionTrace& trace);

}  // namespace menu_adapt
