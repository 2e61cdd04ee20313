#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "menu_adapt/interaction_sim.hpp"
#include "menu_adapt/menu_model.hpp"

namespace menu_adapt {

// How the benefit of a start node enters its utility.
//   kSingleP: utility = E[T(k, i)] - p_k * T(root, k)
//   kLiteral: utility = E[T(k, i)] - p_k * (p_k * T(root, k))
enum class BenefitMode { kLiteral, kSingleP };

inline constexpr BenefitMode kDefaultBenefitMode = BenefitMode::kSingleP;

std::string_view to_string(BenefitMode mode);
// Accepts "literal" and "single-p".
BenefitMode parse_benefit_mode(std::string_view text);

inline constexpr double kUtilityTieTolerance = 1e-9;  // ms, absolute

struct UtilityEntry {
  NodeId node;
  int depth = 0;
  double p = 0.0;              // subtree mass
  double expected_cost = 0.0;  // sum_i p_i * T(node, i)
  double benefit = 0.0;        // p * T(root, node)
  double utility = 0.0;
};

struct UtilityTable {
  std::vector<UtilityEntry> entries;  // pre-order unless shuffled by a caller
  BenefitMode mode = kDefaultBenefitMode;
  CostParams costs;
};

struct AdaptationResult {
  NodeId selected;
  double utility = 0.0;
  // Another candidate came within kUtilityTieTolerance of the minimum and
  // depth or pre-order decided.
  bool tie_broken = false;
  std::optional<std::pair<NodeId, double>> runner_up;
};

// Benefit(k) = subtree_mass(k) * search_cost_from_root(k).
double benefit(const MenuTree& tree, const CostParams& costs,
               const TargetDistribution& dist, NodeId k);

double expected_selection_time(const MenuTree& tree, const CostParams& costs,
                               const TargetDistribution& dist,
                               NodeId adaptation);

double utility(const MenuTree& tree, const CostParams& costs,
               const TargetDistribution& dist, NodeId k, BenefitMode mode);

// One row per node in pre-order. Rows are computed independently and in
// parallel when the standard library supports it; the result does not
// depend on scheduling.
UtilityTable utility_table(const MenuTree& tree, const CostParams& costs,
                           const TargetDistribution& dist, BenefitMode mode);

// Argmin of utility. Candidates within kUtilityTieTolerance of the minimum
// tie; ties go to the shallower node, then the earlier one in pre-order.
// Throws ValidationError(kInvalidArgument) for an empty table.
AdaptationResult select_adaptation(const UtilityTable& table);

// Highest-probability leaf; ties go to the earlier leaf in pre-order.
NodeId greedy_adaptation(const MenuTree& tree, const TargetDistribution& dist);

struct MonteCarloEstimate {
  double mean = 0.0;
  double sample_std = 0.0;  // Bessel-corrected; 0 for a single sample
  std::uint64_t samples = 0;

  double standard_error() const;
};

// Draws `samples` targets i.i.d. from `dist` with a generator seeded by
// `seed`, simulates each walk and averages the trace costs.
MonteCarloEstimate monte_carlo_expected_time(const MenuTree& tree,
                                             const CostParams& costs,
                                             const TargetDistribution& dist,
                                             NodeId adaptation,
                                             std::uint64_t samples,
                                             std::uint64_t seed);

// CSV `node,depth,p,expected_cost_ms,benefit_ms,utility_ms,selected`, rows in
// pre-order regardless of the table's row order.
void write_utility_csv(std::ostream& os, const MenuTree& tree,
                       const UtilityTable& table,
                       const AdaptationResult& result);

}  // namespace menu_adapt
