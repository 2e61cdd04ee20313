#include "menu_adapt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "menu_adapt/errors.hpp"
#include "menu_adapt/format.hpp"

namespace menu_adapt::oracle {

std::string Variant::name() const {
  std::string n = op == BacktrackOp::kAdditive ? "additive" : "multiplicative";
  n += boundary == Boundary::kDedup ? "+dedup" : "+double-count";
  if (canonical()) n += " [canonical]";
  return n;
}

namespace {

// Everything here walks the tree by hand; no helpers from the simulator.
class NaiveModel {
 public:
  NaiveModel(const MenuTree& tree, const CostParams& costs, Variant variant)
      : tree_(tree), costs_(costs), variant_(variant) {}

  double total(NodeId start, NodeId target) const {
    if (tree_.is_leaf(start) && start == target) return costs_.t_inspect;
    auto [backtrack, common] = backtrack_cost(start, target);
    return backtrack + search_cost(common, target);
  }

  // Search-and-select from `menu` down to `target`, which may be any node
  // below it.
  double search_cost(NodeId menu, NodeId target) const {
    if (menu == target) return 0.0;
    const auto kids = tree_.children(menu);
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (in_subtree(kids[j], target)) {
        return scan(static_cast<int>(j) + 1) + costs_.t_select +
               search_cost(kids[j], target);
      }
    }
    throw InvariantViolation("oracle: target is not below the search menu");
  }

 private:
  bool in_subtree(NodeId root, NodeId node) const {
    if (root == node) return true;
    for (NodeId c : tree_.children(root)) {
      if (in_subtree(c, node)) return true;
    }
    return false;
  }

  // Inspecting items 1..l of a menu.
  double scan(int l) const {
    double sum = 0.0;
    for (int j = 1; j <= l; ++j) sum += costs_.t_inspect;
    return sum;
  }

  double level(int l) const {
    return variant_.op == BacktrackOp::kAdditive
               ? costs_.t_correct + scan(l)
               : costs_.t_correct * scan(l);
  }

  int relevant_position(NodeId menu, NodeId target) const {
    const auto kids = tree_.children(menu);
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (in_subtree(kids[j], target)) return static_cast<int>(j) + 1;
    }
    return 0;
  }

  // Returns the backtracking cost and the menu where the search begins.
  std::pair<double, NodeId> backtrack_cost(NodeId start,
                                           NodeId target) const {
    double cost = 0.0;
    bool corrected = false;
    NodeId menu = start;
    if (tree_.is_leaf(start)) {
      cost += level(1);
      corrected = true;
      menu = *tree_.parent(start);
    }
    while (!in_subtree(menu, target)) {
      cost += level(static_cast<int>(tree_.children(menu).size()));
      corrected = true;
      menu = *tree_.parent(menu);
    }
    if (corrected && variant_.boundary == Boundary::kDoubleCount) {
      cost += scan(relevant_position(menu, target));
    }
    return {cost, menu};
  }

  const MenuTree& tree_;
  const CostParams& costs_;
  Variant variant_;
};

}  // namespace

double naive_cost(const MenuTree& tree, const CostParams& costs, NodeId start,
                  NodeId target, Variant variant) {
  tree.node(start);
  if (!tree.is_leaf(target)) {
    throw ValidationError(ErrorKind::kNotALeaf,
                          "target '" + tree.label(target) + "' is a sub-menu");
  }
  return NaiveModel(tree, costs, variant).total(start, target);
}

std::vector<VariantRow> variant_report(const MenuTree& tree,
                                       const TargetDistribution& dist,
                                       std::span<const NamedCosts> scenarios,
                                       BenefitMode mode) {
  const auto masses = subtree_masses(tree, dist);
  std::vector<VariantRow> rows;
  for (const Variant& variant : kAllVariants) {
    for (const auto& scenario : scenarios) {
      const NaiveModel model(tree, scenario.costs, variant);
      UtilityTable table{{}, mode, scenario.costs};
      double max_dev = 0.0;
      for (const auto& node : tree.nodes()) {
        UtilityEntry e;
        e.node = node.id;
        e.depth = node.depth;
        e.p = masses[node.id.value];
        for (NodeId leaf : tree.leaves()) {
          const double t = model.total(node.id, leaf);
          max_dev = std::max(
              max_dev,
              std::abs(t - interaction_cost(tree, scenario.costs, node.id, leaf)));
          if (dist.mass(leaf) > 0.0) e.expected_cost += dist.mass(leaf) * t;
        }
        e.benefit = e.p * model.search_cost(tree.root(), node.id);
        e.utility = mode == BenefitMode::kLiteral
                        ? e.expected_cost - e.p * e.benefit
                        : e.expected_cost - e.benefit;
        table.entries.push_back(e);
      }
      rows.push_back(VariantRow{variant, scenario.name,
                                select_adaptation(table).selected, max_dev});
    }
  }
  return rows;
}

void write_variant_csv(std::ostream& os, const MenuTree& tree,
                       std::span<const VariantRow> rows) {
  os << "variant,scenario,selected,max_abs_dev_ms\n";
  for (const auto& row : rows) {
    os << csv_field(row.variant.name()) << ',' << csv_field(row.scenario) << ','
       << csv_field(tree.label(row.selected)) << ','
       << format_ms(row.max_abs_dev_ms) << '\n';
  }
}

}  // namespace menu_adapt::oracle
