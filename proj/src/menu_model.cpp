#include "menu_adapt/menu_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "menu_adapt/errors.hpp"

namespace menu_adapt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFileNotFound: return "file-not-found";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kDuplicateLabel: return "duplicate-label";
    case ErrorKind::kEmptyInternalNode: return "empty-internal-node";
    case ErrorKind::kMultipleRoots: return "multiple-roots";
    case ErrorKind::kCycle: return "cycle";
    case ErrorKind::kUnknownLabel: return "unknown-label";
    case ErrorKind::kNotALeaf: return "not-a-leaf";
    case ErrorKind::kNotAChild: return "not-a-child";
    case ErrorKind::kMassOutOfTolerance: return "mass-out-of-tolerance";
    case ErrorKind::kInvalidCost: return "invalid-cost";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

const MenuNode& MenuTree::node(NodeId id) const {
  if (!contains(id)) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "node id " + std::to_string(id.value) +
                              " is out of range");
  }
  return nodes_[id.value];
}

std::optional<NodeId> MenuTree::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

NodeId MenuTree::at(std::string_view label) const {
  if (auto id = find(label)) return *id;
  throw ValidationError(ErrorKind::kUnknownLabel,
                        "unknown menu item '" + std::string(label) + "'");
}

bool MenuTree::is_ancestor_or_self(NodeId ancestor, NodeId id) const {
  const int target_depth = depth(ancestor);
  std::optional<NodeId> cur = id;
  while (cur && depth(*cur) > target_depth) cur = parent(*cur);
  return cur && *cur == ancestor;
}

std::vector<NodeId> MenuTree::path_from_root(NodeId id) const {
  std::vector<NodeId> path;
  for (std::optional<NodeId> cur = id; cur; cur = parent(*cur)) {
    path.push_back(*cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool operator==(const MenuTree& a, const MenuTree& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const auto& x = a.nodes_[i];
    const auto& y = b.nodes_[i];
    if (x.label != y.label || x.parent != y.parent ||
        x.children != y.children || x.kind != y.kind) {
      return false;
    }
  }
  return true;
}

void MenuTree::finalize() {
  leaves_.clear();
  by_label_.clear();
  height_ = 0;
  for (auto& n : nodes_) {
    n.depth = n.parent ? nodes_[n.parent->value].depth + 1 : 0;
    height_ = std::max(height_, n.depth);
    if (n.kind == NodeKind::kLeaf) leaves_.push_back(n.id);
    by_label_.emplace(n.label, n.id);
  }
}

MenuTree build_tree(std::span<const NodeSpec> specs) {
  if (specs.empty()) {
    throw ValidationError(ErrorKind::kSchema, "menu has no items");
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].label.empty()) {
      throw ValidationError(ErrorKind::kSchema, "menu item with empty label");
    }
    if (!index.emplace(specs[i].label, i).second) {
      throw ValidationError(ErrorKind::kDuplicateLabel,
                            "duplicate label '" + specs[i].label + "'");
    }
  }

  std::vector<std::vector<std::size_t>> kids(specs.size());
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& parent = specs[i].parent;
    if (!parent) {
      roots.push_back(i);
      continue;
    }
    auto it = index.find(*parent);
    if (it == index.end()) {
      throw ValidationError(ErrorKind::kUnknownLabel,
                            "'" + specs[i].label + "' has unknown parent '" +
                                *parent + "'");
    }
    kids[it->second].push_back(i);
  }
  if (roots.size() > 1) {
    throw ValidationError(ErrorKind::kMultipleRoots,
                          "multiple roots: '" + specs[roots[0]].label +
                              "' and '" + specs[roots[1]].label + "'");
  }
  if (roots.empty()) {
    // Every item has a parent, so following parents never terminates.
    throw ValidationError(ErrorKind::kCycle,
                          "cycle through '" + specs[0].label + "'");
  }

  MenuTree tree;
  tree.nodes_.reserve(specs.size());
  std::vector<bool> seen(specs.size(), false);
  struct Frame {
    std::size_t spec;
    std::optional<NodeId> parent;
  };
  std::vector<Frame> stack{{roots[0], std::nullopt}};
  while (!stack.empty()) {
    auto [si, parent] = stack.back();
    stack.pop_back();
    seen[si] = true;
    const NodeSpec& spec = specs[si];
    const bool has_children = !kids[si].empty();
    if (spec.kind == NodeKind::kMenu && !has_children) {
      throw ValidationError(ErrorKind::kEmptyInternalNode,
                            "sub-menu '" + spec.label + "' has no items");
    }
    if (spec.kind == NodeKind::kLeaf && has_children) {
      throw ValidationError(ErrorKind::kSchema,
                            "leaf '" + spec.label + "' has children");
    }
    const NodeId id{static_cast<std::uint32_t>(tree.nodes_.size())};
    tree.nodes_.push_back(MenuNode{
        id, spec.label, parent, {},
        has_children ? NodeKind::kMenu : NodeKind::kLeaf, 0});
    if (parent) tree.nodes_[parent->value].children.push_back(id);
    for (auto it = kids[si].rbegin(); it != kids[si].rend(); ++it) {
      stack.push_back({*it, id});
    }
  }
  if (tree.nodes_.size() != specs.size()) {
    auto it = std::find(seen.begin(), seen.end(), false);
    throw ValidationError(
        ErrorKind::kCycle,
        "cycle through '" + specs[std::distance(seen.begin(), it)].label + "'");
  }
  tree.finalize();
  return tree;
}

namespace {

void flatten(const nlohmann::json& doc, const std::optional<std::string>& parent,
             std::vector<NodeSpec>& out) {
  if (!doc.is_object()) {
    throw ValidationError(ErrorKind::kSchema, "menu item must be an object");
  }
  auto label = doc.find("label");
  if (label == doc.end() || !label->is_string()) {
    throw ValidationError(ErrorKind::kSchema,
                          "menu item requires a string \"label\"");
  }
  NodeSpec spec{label->get<std::string>(), parent, std::nullopt};
  if (auto kind = doc.find("kind"); kind != doc.end()) {
    if (*kind == "menu") {
      spec.kind = NodeKind::kMenu;
    } else if (*kind == "leaf") {
      spec.kind = NodeKind::kLeaf;
    } else {
      throw ValidationError(ErrorKind::kSchema,
                            "\"kind\" must be \"menu\" or \"leaf\" for '" +
                                spec.label + "'");
    }
  }
  out.push_back(spec);
  auto children = doc.find("children");
  if (children == doc.end() || children->is_null()) return;
  if (!children->is_array()) {
    throw ValidationError(ErrorKind::kSchema, "\"children\" of '" + spec.label +
                                                  "' must be an array");
  }
  for (const auto& child : *children) flatten(child, spec.label, out);
}

}  // namespace

MenuTree build_tree(const nlohmann::json& doc) {
  std::vector<NodeSpec> specs;
  if (doc.is_array()) {
    if (doc.empty()) {
      throw ValidationError(ErrorKind::kSchema, "menu has no items");
    }
    for (const auto& root : doc) flatten(root, std::nullopt, specs);
  } else {
    flatten(doc, std::nullopt, specs);
  }
  return build_tree(std::span<const NodeSpec>(specs));
}

namespace {

nlohmann::ordered_json node_to_json(const MenuTree& tree, NodeId id) {
  nlohmann::ordered_json j;
  j["label"] = tree.label(id);
  if (!tree.is_leaf(id)) {
    auto children = nlohmann::ordered_json::array();
    for (NodeId c : tree.children(id)) children.push_back(node_to_json(tree, c));
    j["children"] = std::move(children);
  }
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const MenuTree& tree) {
  return node_to_json(tree, tree.root());
}

NodeId lca(const MenuTree& tree, NodeId a, NodeId b) {
  tree.node(a);
  tree.node(b);
  while (tree.depth(a) > tree.depth(b)) a = *tree.parent(a);
  while (tree.depth(b) > tree.depth(a)) b = *tree.parent(b);
  while (a != b) {
    a = *tree.parent(a);
    b = *tree.parent(b);
  }
  return a;
}

int child_position(const MenuTree& tree, NodeId parent, NodeId child) {
  auto kids = tree.children(parent);
  auto it = std::find(kids.begin(), kids.end(), child);
  if (it == kids.end()) {
    throw ValidationError(ErrorKind::kNotAChild,
                          "'" + tree.label(child) + "' is not a child of '" +
                              tree.label(parent) + "'");
  }
  return static_cast<int>(std::distance(kids.begin(), it)) + 1;
}

TargetDistribution TargetDistribution::from_labels(
    const MenuTree& tree,
    std::span<const std::pair<std::string, double>> entries,
    bool renormalize) {
  std::vector<double> by_node(tree.size(), 0.0);
  std::vector<bool> assigned(tree.size(), false);
  for (const auto& [label, p] : entries) {
    auto id = tree.find(label);
    if (!id) {
      throw ValidationError(ErrorKind::kUnknownLabel,
                            "distribution names unknown item '" + label + "'");
    }
    if (!tree.is_leaf(*id)) {
      throw ValidationError(ErrorKind::kNotALeaf,
                            "distribution assigns mass to sub-menu '" + label +
                                "'");
    }
    if (assigned[id->value]) {
      throw ValidationError(ErrorKind::kDuplicateLabel,
                            "distribution lists '" + label + "' twice");
    }
    assigned[id->value] = true;
    by_node[id->value] = p;
  }
  return from_masses(tree, std::move(by_node), renormalize);
}

TargetDistribution TargetDistribution::from_masses(const MenuTree& tree,
                                                   std::vector<double> by_node,
                                                   bool renormalize) {
  if (by_node.size() != tree.size()) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "distribution size does not match the menu");
  }
  for (std::size_t i = 0; i < by_node.size(); ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    const double p = by_node[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0 + kSumTolerance) {
      throw ValidationError(ErrorKind::kInvalidArgument,
                            "probability of '" + tree.label(id) +
                                "' must lie in [0, 1]");
    }
    if (!tree.is_leaf(id) && p != 0.0) {
      throw ValidationError(ErrorKind::kNotALeaf,
                            "distribution assigns mass to sub-menu '" +
                                tree.label(id) + "'");
    }
  }
  const double sum = std::accumulate(by_node.begin(), by_node.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    if (!renormalize || !(sum > 0.0)) {
      throw ValidationError(ErrorKind::kMassOutOfTolerance,
                            "probabilities sum to " + std::to_string(sum) +
                                ", expected 1");
    }
    for (double& p : by_node) p /= sum;
  }
  TargetDistribution d;
  d.mass_ = std::move(by_node);
  return d;
}

double TargetDistribution::total() const noexcept {
  return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

double subtree_mass(const MenuTree& tree, const TargetDistribution& dist,
                    NodeId k) {
  if (tree.is_leaf(k)) return dist.mass(k);
  double sum = 0.0;
  for (NodeId c : tree.children(k)) sum += subtree_mass(tree, dist, c);
  return sum;
}

std::vector<double> subtree_masses(const MenuTree& tree,
                                   const TargetDistribution& dist) {
  std::vector<double> out(tree.size(), 0.0);
  // Reverse pre-order visits every child before its parent.
  for (std::size_t i = tree.size(); i-- > 0;) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    if (tree.is_leaf(id)) {
      out[i] = dist.mass(id);
    } else {
      for (NodeId c : tree.children(id)) out[i] += out[c.value];
    }
  }
  return out;
}

}  // namespace menu_adapt
