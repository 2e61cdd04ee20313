#include "menu_adapt/interaction_sim.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "menu_adapt/errors.hpp"
#include "menu_adapt/format.hpp"

namespace menu_adapt {

void CostParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(ErrorKind::kInvalidCost,
                            fmt::format("{} must be a finite, non-negative "
                                        "number of milliseconds (got {})",
                                        name, v));
    }
  };
  check(t_inspect, "t_inspect");
  check(t_select, "t_select");
  check(t_correct, "t_correct");
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kInspect: return "INSPECT";
    case ActionKind::kSelect: return "SELECT";
    case ActionKind::kCorrect: return "CORRECT";
  }
  return "?";
}

namespace {

void check_endpoints(const MenuTree& tree, NodeId start, NodeId target) {
  tree.node(start);
  if (!tree.is_leaf(target)) {
    throw ValidationError(ErrorKind::kNotALeaf,
                          "target '" + tree.label(target) + "' is a sub-menu");
  }
}

}  // namespace

ActionTrace simulate_trace(const MenuTree& tree, const CostParams& costs,
                           NodeId start, NodeId target,
                           LeafConfirmation confirm) {
  check_endpoints(tree, start, target);
  ActionTrace trace{start, target, {}};
  auto emit = [&](ActionKind kind, NodeId node) {
    double cost = 0.0;
    switch (kind) {
      case ActionKind::kInspect: cost = costs.t_inspect; break;
      case ActionKind::kSelect: cost = costs.t_select; break;
      case ActionKind::kCorrect: cost = costs.t_correct; break;
    }
    trace.events.push_back({kind, node, cost});
  };

  NodeId focus = start;
  if (tree.is_leaf(start)) {
    if (start == target) {
      if (confirm == LeafConfirmation::kInspect) {
        emit(ActionKind::kInspect, start);
      }
      return trace;
    }
    emit(ActionKind::kInspect, start);
    emit(ActionKind::kCorrect, start);
    focus = *tree.parent(start);
  }

  while (!tree.is_ancestor_or_self(focus, target)) {
    for (NodeId c : tree.children(focus)) emit(ActionKind::kInspect, c);
    emit(ActionKind::kCorrect, focus);
    focus = *tree.parent(focus);
  }

  const auto path = tree.path_from_root(target);
  for (auto i = static_cast<std::size_t>(tree.depth(focus)) + 1;
       i < path.size(); ++i) {
    const NodeId next = path[i];
    for (NodeId c : tree.children(focus)) {
      emit(ActionKind::kInspect, c);
      if (c == next) break;
    }
    emit(ActionKind::kSelect, next);
    focus = next;
  }
  return trace;
}

double trace_cost(const ActionTrace& trace) {
  double total = 0.0;
  for (const auto& e : trace.events) total += e.cost;
  return total;
}

ActionCounts count_actions(const ActionTrace& trace) {
  ActionCounts n;
  for (const auto& e : trace.events) {
    switch (e.kind) {
      case ActionKind::kInspect: ++n.inspect; break;
      case ActionKind::kSelect: ++n.select; break;
      case ActionKind::kCorrect: ++n.correct; break;
    }
  }
  return n;
}

ActionCounts action_counts(const MenuTree& tree, NodeId start, NodeId target,
                           LeafConfirmation confirm) {
  check_endpoints(tree, start, target);
  ActionCounts n;
  if (start == target) {
    n.inspect = confirm == LeafConfirmation::kInspect ? 1 : 0;
    return n;
  }
  const NodeId common = lca(tree, start, target);

  // Backtracking: every menu below the common parent is scanned in full.
  NodeId level = start;
  if (tree.is_leaf(start)) {
    n.inspect += 1;
    n.correct += 1;
    level = *tree.parent(start);
  }
  for (; level != common; level = *tree.parent(level)) {
    n.inspect += static_cast<long>(tree.children(level).size());
    n.correct += 1;
  }

  // Search-and-select down from the common parent.
  for (NodeId node = target; node != common; node = *tree.parent(node)) {
    n.inspect += child_position(tree, *tree.parent(node), node);
    n.select += 1;
  }
  return n;
}

double interaction_cost(const MenuTree& tree, const CostParams& costs,
                        NodeId start, NodeId target, LeafConfirmation confirm) {
  return action_counts(tree, start, target, confirm).price(costs);
}

double search_cost_from_root(const MenuTree& tree, const CostParams& costs,
                             NodeId k) {
  ActionCounts n;
  for (NodeId node = k; node != tree.root(); node = *tree.parent(node)) {
    n.inspect += child_position(tree, *tree.parent(node), node);
    n.select += 1;
  }
  return n.price(costs);
}

void write_trace(std::ostream& os, const MenuTree& tree,
                 const ActionTrace& trace) {
  for (const auto& e : trace.events) {
    os << to_string(e.kind) << ' ' << tree.label(e.node) << ' '
       << format_ms(e.cost) << '\n';
  }
  os << "TOTAL " << format_ms(trace_cost(trace)) << '\n';
}

}  // namespace menu_adapt
