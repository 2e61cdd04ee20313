#include "menu_adapt/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <numeric>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "menu_adapt/errors.hpp"
#include "menu_adapt/format.hpp"

namespace menu_adapt {

std::string_view to_string(BenefitMode mode) {
  return mode == BenefitMode::kLiteral ? "literal" : "single-p";
}

BenefitMode parse_benefit_mode(std::string_view text) {
  if (text == "literal") return BenefitMode::kLiteral;
  if (text == "single-p") return BenefitMode::kSingleP;
  throw ValidationError(ErrorKind::kSchema,
                        fmt::format("unknown benefit mode '{}' (expected "
                                    "literal or single-p)",
                                    text));
}

double benefit(const MenuTree& tree, const CostParams& costs,
               const TargetDistribution& dist, NodeId k) {
  return subtree_mass(tree, dist, k) * search_cost_from_root(tree, costs, k);
}

double expected_selection_time(const MenuTree& tree, const CostParams& costs,
                               const TargetDistribution& dist,
                               NodeId adaptation) {
  tree.node(adaptation);
  double total = 0.0;
  for (NodeId leaf : tree.leaves()) {
    const double p = dist.mass(leaf);
    if (p > 0.0) total += p * interaction_cost(tree, costs, adaptation, leaf);
  }
  return total;
}

namespace {

UtilityEntry make_entry(const MenuTree& tree, const CostParams& costs,
                        const TargetDistribution& dist, NodeId k, double mass,
                        BenefitMode mode) {
  UtilityEntry e;
  e.node = k;
  e.depth = tree.depth(k);
  e.p = mass;
  e.expected_cost = expected_selection_time(tree, costs, dist, k);
  e.benefit = mass * search_cost_from_root(tree, costs, k);
  e.utility = mode == BenefitMode::kLiteral ? e.expected_cost - mass * e.benefit
                                            : e.expected_cost - e.benefit;
  return e;
}

}  // namespace

double utility(const MenuTree& tree, const CostParams& costs,
               const TargetDistribution& dist, NodeId k, BenefitMode mode) {
  return make_entry(tree, costs, dist, k, subtree_mass(tree, dist, k), mode)
      .utility;
}

UtilityTable utility_table(const MenuTree& tree, const CostParams& costs,
                           const TargetDistribution& dist, BenefitMode mode) {
  costs.validate();
  const auto masses = subtree_masses(tree, dist);
  UtilityTable table{std::vector<UtilityEntry>(tree.size()), mode, costs};
  std::vector<std::uint32_t> ids(tree.size());
  std::iota(ids.begin(), ids.end(), 0u);
  std::for_each(std::execution::par, ids.begin(), ids.end(),
                [&](std::uint32_t i) {
                  table.entries[i] = make_entry(tree, costs, dist, NodeId{i},
                                                masses[i], mode);
                });
  return table;
}

namespace {

// Strict order used after utilities are known to tie.
bool structurally_before(const UtilityEntry& a, const UtilityEntry& b) {
  if (a.depth != b.depth) return a.depth < b.depth;
  return a.node < b.node;
}

}  // namespace

AdaptationResult select_adaptation(const UtilityTable& table) {
  const auto& rows = table.entries;
  if (rows.empty()) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "cannot select from an empty utility table");
  }
  const double best = std::min_element(rows.begin(), rows.end(),
                                       [](const auto& a, const auto& b) {
                                         return a.utility < b.utility;
                                       })
                          ->utility;

  const UtilityEntry* chosen = nullptr;
  int tied = 0;
  for (const auto& row : rows) {
    if (row.utility - best > kUtilityTieTolerance) continue;
    ++tied;
    if (!chosen || structurally_before(row, *chosen)) chosen = &row;
  }

  // Runner-up: best of the rest under the same ordering.
  const UtilityEntry* second = nullptr;
  for (const auto& row : rows) {
    if (&row == chosen) continue;
    if (!second || row.utility < second->utility - kUtilityTieTolerance ||
        (std::abs(row.utility - second->utility) <= kUtilityTieTolerance &&
         structurally_before(row, *second))) {
      second = &row;
    }
  }

  AdaptationResult result{chosen->node, chosen->utility, tied > 1,
                          std::nullopt};
  if (second) result.runner_up = std::make_pair(second->node, second->utility);
  return result;
}

NodeId greedy_adaptation(const MenuTree& tree, const TargetDistribution& dist) {
  const auto leaves = tree.leaves();
  NodeId best = leaves.front();
  for (NodeId leaf : leaves) {
    if (dist.mass(leaf) > dist.mass(best)) best = leaf;
  }
  return best;
}

double MonteCarloEstimate::standard_error() const {
  return samples == 0 ? 0.0
                      : sample_std / std::sqrt(static_cast<double>(samples));
}

MonteCarloEstimate monte_carlo_expected_time(const MenuTree& tree,
                                             const CostParams& costs,
                                             const TargetDistribution& dist,
                                             NodeId adaptation,
                                             std::uint64_t samples,
                                             std::uint64_t seed) {
  if (samples == 0) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "Monte Carlo needs at least one sample");
  }
  tree.node(adaptation);
  const auto leaves = tree.leaves();
  std::vector<double> weights;
  weights.reserve(leaves.size());
  for (NodeId leaf : leaves) weights.push_back(dist.mass(leaf));

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());

  std::vector<std::uint64_t> hits(leaves.size(), 0);
  std::vector<double> cost(leaves.size(), 0.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t i = draw(rng);
    cost[i] = trace_cost(simulate_trace(tree, costs, adaptation, leaves[i]));
    ++hits[i];
  }

  // Weighting by hit frequency keeps a single-target run exact.
  const double n = static_cast<double>(samples);
  MonteCarloEstimate est;
  est.samples = samples;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (hits[i] > 0) est.mean += (static_cast<double>(hits[i]) / n) * cost[i];
  }
  if (samples > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      const double d = cost[i] - est.mean;
      ss += static_cast<double>(hits[i]) * d * d;
    }
    est.sample_std = std::sqrt(ss / (n - 1.0));
  }
  return est;
}

void write_utility_csv(std::ostream& os, const MenuTree& tree,
                       const UtilityTable& table,
                       const AdaptationResult& result) {
  std::vector<const UtilityEntry*> rows;
  rows.reserve(table.entries.size());
  for (const auto& e : table.entries) rows.push_back(&e);
  std::sort(rows.begin(), rows.end(),
            [](const auto* a, const auto* b) { return a->node < b->node; });

  os << "node,depth,p,expected_cost_ms,benefit_ms,utility_ms,selected\n";
  for (const auto* e : rows) {
    os << csv_field(tree.label(e->node)) << ',' << e->depth << ','
       << fmt::format("{:.6f}", e->p) << ',' << format_ms(e->expected_cost)
       << ',' << format_ms(e->benefit) << ',' << format_ms(e->utility) << ','
       << (e->node == result.selected ? 1 : 0) << '\n';
  }
}

}  // namespace menu_adapt
