#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "menu_adapt/adaptation.hpp"
#include "menu_adapt/interaction_sim.hpp"
#include "menu_adapt/menu_model.hpp"

// Naive re-derivation of the serial-search cost equations, written without
// the simulator so that the two can be checked against each other.
namespace menu_adapt::oracle {

enum class BacktrackOp {
  kAdditive,                // T_correct + l * T_inspect per level
  kLiteralMultiplicative,   // T_correct * (l * T_inspect) per level
};

enum class Boundary {
  kDedup,        // the common-parent menu is only scanned by the search
  kDoubleCount,  // backtracking also scans it up to the relevant item
};

struct Variant {
  BacktrackOp op = BacktrackOp::kAdditive;
  Boundary boundary = Boundary::kDedup;

  bool canonical() const {
    return op == BacktrackOp::kAdditive && boundary == Boundary::kDedup;
  }
  std::string name() const;

  friend bool operator==(const Variant&, const Variant&) = default;
};

inline constexpr Variant kCanonical{};

inline constexpr std::array<Variant, 4> kAllVariants{{
    {BacktrackOp::kAdditive, Boundary::kDedup},
    {BacktrackOp::kAdditive, Boundary::kDoubleCount},
    {BacktrackOp::kLiteralMultiplicative, Boundary::kDedup},
    {BacktrackOp::kLiteralMultiplicative, Boundary::kDoubleCount},
}};

double naive_cost(const MenuTree& tree, const CostParams& costs, NodeId start,
                  NodeId target, Variant variant = kCanonical);

struct NamedCosts {
  std::string name;
  CostParams costs;
};

struct VariantRow {
  Variant variant;
  std::string scenario;
  NodeId selected;
  // Largest |naive_cost - interaction_cost| over all (start, leaf) pairs.
  double max_abs_dev_ms = 0.0;
};

// Adaptation chosen when the variant's cost function replaces the simulator,
// for every scenario.
std::vector<VariantRow> variant_report(const MenuTree& tree,
                                       const TargetDistribution& dist,
                                       std::span<const NamedCosts> scenarios,
                                       BenefitMode mode = kDefaultBenefitMode);

// CSV `variant,scenario,selected,max_abs_dev_ms`.
void write_variant_csv(std::ostream& os, const MenuTree& tree,
                       std::span<const VariantRow> rows);

}  // namespace menu_adapt::oracle
