#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace menu_adapt {

// Index of a node in pre-order. The root is always 0.
struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

enum class NodeKind { kLeaf, kMenu };

struct MenuNode {
  NodeId id;
  std::string label;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;  // display order
  NodeKind kind = NodeKind::kLeaf;
  int depth = 0;
};

// One entry of the flat parent-link form. Children keep the order in which
// they appear. An explicit kind lets a menu be declared before (or without)
// any children.
struct NodeSpec {
  std::string label;
  std::optional<std::string> parent;
  std::optional<NodeKind> kind;
};

// Immutable, validated ordered tree. Built only through build_tree().
class MenuTree {
 public:
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return NodeId{0}; }

  const MenuNode& node(NodeId id) const;
  const std::string& label(NodeId id) const { return node(id).label; }
  std::optional<NodeId> parent(NodeId id) const { return node(id).parent; }
  std::span<const NodeId> children(NodeId id) const { return node(id).children; }
  bool is_leaf(NodeId id) const { return node(id).kind == NodeKind::kLeaf; }
  int depth(NodeId id) const { return node(id).depth; }
  int height() const noexcept { return height_; }

  std::optional<NodeId> find(std::string_view label) const;
  // Throws ValidationError(kUnknownLabel).
  NodeId at(std::string_view label) const;

  std::span<const MenuNode> nodes() const noexcept { return nodes_; }
  // Leaves in pre-order.
  std::span<const NodeId> leaves() const noexcept { return leaves_; }

  bool is_ancestor_or_self(NodeId ancestor, NodeId node) const;
  // Root first, `id` last.
  std::vector<NodeId> path_from_root(NodeId id) const;

  bool contains(NodeId id) const noexcept { return id.value < nodes_.size(); }

  friend bool operator==(const MenuTree& a, const MenuTree& b);

 private:
  friend MenuTree build_tree(std::span<const NodeSpec> specs);
  friend MenuTree build_tree(const nlohmann::json& doc);

  void finalize();

  std::vector<MenuNode> nodes_;
  std::vector<NodeId> leaves_;
  std::unordered_map<std::string, NodeId> by_label_;
  int height_ = 0;
};

// Nested form: {"label": ..., "children": [...]}; absent or empty children
// mark a leaf. Node ids are assigned in pre-order.
MenuTree build_tree(const nlohmann::json& doc);
MenuTree build_tree(std::span<const NodeSpec> specs);

nlohmann::ordered_json to_json(const MenuTree& tree);

NodeId lca(const MenuTree& tree, NodeId a, NodeId b);

// 1-based display position of `child` under `parent`.
int child_position(const MenuTree& tree, NodeId parent, NodeId child);

// Probability over the leaves of one tree. Internal nodes always carry 0.
class TargetDistribution {
 public:
  static constexpr double kSumTolerance = 1e-6;

  // Missing leaves get mass 0. Rejects unknown labels, internal labels,
  // negative or non-finite masses, and sums outside 1 ± kSumTolerance
  // unless `renormalize` is set.
  static TargetDistribution from_labels(
      const MenuTree& tree,
      std::span<const std::pair<std::string, double>> entries,
      bool renormalize = false);

  // Indexed by node id; entries on internal nodes must be zero.
  static TargetDistribution from_masses(const MenuTree& tree,
                                        std::vector<double> by_node,
                                        bool renormalize = false);

  double mass(NodeId leaf) const { return mass_.at(leaf.value); }
  std::span<const double> by_node() const noexcept { return mass_; }
  double total() const noexcept;

  friend bool operator==(const TargetDistribution&,
                         const TargetDistribution&) = default;

 private:
  std::vector<double> mass_;
};

// Leaf mass for leaves; sum over descendant leaves otherwise.
double subtree_mass(const MenuTree& tree, const TargetDistribution& dist,
                    NodeId k);

// subtree_mass for every node at once, indexed by node id.
std::vector<double> subtree_masses(const MenuTree& tree,
                                   const TargetDistribution& dist);

}  // namespace menu_adapt

template <>
struct std::hash<menu_adapt::NodeId> {
  std::size_t operator()(menu_adapt::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
