#include <sstream>

#include "catch2/catch_amalgamated.hpp"
#include "menu_adapt/errors.hpp"
#include "menu_adapt/oracle.hpp"
#include "support/generators.hpp"

namespace menu_adapt {
namespace {

using oracle::BacktrackOp;
using oracle::Boundary;
using oracle::Variant;
using testing::walkthrough;

constexpr CostParams kScenario1{100, 2500, 500};
constexpr CostParams kScenario2{100, 500, 2500};

TEST_CASE("canonical oracle matches the simulator on the fixture", "[oracle]") {
  const auto& t = walkthrough().menu;
  for (const auto& costs : {kScenario1, kScenario2}) {
    int pairs = 0;
    for (const auto& n : t.nodes()) {
      for (NodeId leaf : t.leaves()) {
        ++pairs;
        CHECK(oracle::naive_cost(t, costs, n.id, leaf) ==
              interaction_cost(t, costs, n.id, leaf));
      }
    }
    CHECK(pairs == 228);
  }
}

TEST_CASE("double counting adds one partial scan of the common menu",
          "[oracle]") {
  const auto& t = walkthrough().menu;
  const Variant dedup{BacktrackOp::kAdditive, Boundary::kDedup};
  const Variant twice{BacktrackOp::kAdditive, Boundary::kDoubleCount};
  for (const auto& n : t.nodes()) {
    for (NodeId leaf : t.leaves()) {
      const double diff = oracle::naive_cost(t, kScenario1, n.id, leaf, twice) -
                          oracle::naive_cost(t, kScenario1, n.id, leaf, dedup);
      const bool backtracked =
          count_actions(simulate_trace(t, kScenario1, n.id, leaf)).correct > 0;
      double expected = 0.0;
      if (backtracked) {
        const NodeId common = lca(t, n.id, leaf);
        const NodeId relevant = t.path_from_root(leaf)[t.depth(common) + 1];
        expected = child_position(t, common, relevant) * kScenario1.t_inspect;
      }
      CHECK(diff == expected);
    }
  }
}

TEST_CASE("multiplicative backtracking from Music to Top 50", "[oracle]") {
  const auto& t = walkthrough().menu;
  const Variant mult{BacktrackOp::kLiteralMultiplicative, Boundary::kDedup};
  // Music: 500 * (3 * 100); Listen: 500 * (2 * 100); then the search
  // (100 + 2500) + (200 + 2500) + (100 + 2500).
  CHECK(oracle::naive_cost(t, kScenario1, t.at("Music"), t.at("Top 50"), mult) ==
        150000.0 + 100000.0 + 7900.0);
}

TEST_CASE("zero costs vanish under every variant", "[oracle]") {
  const auto& t = walkthrough().menu;
  for (const auto& v : oracle::kAllVariants) {
    for (const auto& n : t.nodes()) {
      for (NodeId leaf : t.leaves()) {
        CHECK(oracle::naive_cost(t, CostParams{}, n.id, leaf, v) == 0.0);
      }
    }
  }
}

TEST_CASE("oracle rejects sub-menu targets", "[oracle]") {
  const auto& t = walkthrough().menu;
  CHECK_THROWS_AS(oracle::naive_cost(t, kScenario1, t.root(), t.at("Radio")),
                  ValidationError);
}

TEST_CASE("variant report", "[oracle]") {
  const auto& b = walkthrough();
  const std::vector<oracle::NamedCosts> scenarios{{"scenario1", kScenario1},
                                                  {"scenario2", kScenario2}};
  const auto rows = oracle::variant_report(b.menu, b.dist, scenarios);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    if (r.variant.canonical()) {
      CHECK(r.max_abs_dev_ms == 0.0);
      CHECK(b.menu.label(r.selected) ==
            (r.scenario == "scenario1" ? "Electronic" : "Entertainment"));
    } else {
      CHECK(r.max_abs_dev_ms > 0.0);
    }
  }

  std::ostringstream os;
  oracle::write_variant_csv(os, b.menu, rows);
  const auto csv = os.str();
  CHECK(csv.rfind("variant,scenario,selected,max_abs_dev_ms\n", 0) == 0);
  CHECK(csv.find("additive+dedup [canonical],scenario1,Electronic,0.000\n") !=
        std::string::npos);
}

TEST_CASE("single-node menu makes all variants agree", "[oracle]") {
  std::vector<NodeSpec> specs{{"only", std::nullopt, std::nullopt}};
  const auto t = build_tree(std::span<const NodeSpec>(specs));
  std::vector<std::pair<std::string, double>> p{{"only", 1.0}};
  const auto d = TargetDistribution::from_labels(t, p);
  const std::vector<oracle::NamedCosts> scenarios{{"s", kScenario1}};
  const auto rows = oracle::variant_report(t, d, scenarios);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.selected == t.root());
    CHECK(r.max_abs_dev_ms == 0.0);
  }
}

TEST_CASE("canonical oracle on random trees", "[oracle][property]") {
  testing::Rng rng(31);
  for (int round = 0; round < 300; ++round) {
    const auto tree = testing::random_tree(rng, 50);
    const auto costs = testing::dyadic_costs(rng);
    for (const auto& n : tree.nodes()) {
      for (NodeId leaf : tree.leaves()) {
        REQUIRE(oracle::naive_cost(tree, costs, n.id, leaf) ==
                interaction_cost(tree, costs, n.id, leaf));
      }
    }
  }
}

}  // namespace
}  // namespace menu_adapt
