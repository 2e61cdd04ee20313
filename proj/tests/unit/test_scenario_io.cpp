#include <filesystem>
#include <fstream>

#include "catch2/catch_amalgamated.hpp"
#include "menu_adapt/errors.hpp"
#include "menu_adapt/scenario_io.hpp"
#include "support/generators.hpp"

namespace menu_adapt {
namespace {

using testing::walkthrough;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.kind();
  }
  FAIL("expected a ValidationError");
  return ErrorKind::kSchema;
}

nlohmann::json walkthrough_doc() {
  std::ifstream in(testing::fixture("walkthrough.json"));
  return nlohmann::json::parse(in);
}

TEST_CASE("bundled walkthrough", "[scenario_io]") {
  const auto& b = walkthrough();
  CHECK(b.menu.size() == 19);
  CHECK(b.menu.leaves().size() == 12);
  CHECK(b.dist.total() == Catch::Approx(1.0).margin(1e-12));

  const std::vector<std::pair<std::string, double>> published{
      {"Reality", 0.073}, {"Comedy", 0.024},  {"Drama", 0.098},
      {"Top 50", 0.024},  {"New", 0.024},     {"Classics", 0.122},
      {"News", 0.11},     {"Charts", 0.085},  {"Retro", 0.122},
      {"Jazz", 0.073},    {"Electronic", 0.22}, {"Rock", 0.025}};
  for (const auto& [label, p] : published) {
    CHECK(b.dist.mass(b.menu.at(label)) == p);
  }

  REQUIRE(b.scenarios.size() == 2);
  CHECK(b.scenario("scenario1").costs == CostParams{100, 2500, 500});
  CHECK(b.scenario("scenario2").costs == CostParams{100, 500, 2500});
  CHECK(b.scenario("scenario1").mode == BenefitMode::kSingleP);
  CHECK(kind_of([&] { b.scenario("scenario9"); }) == ErrorKind::kUnknownLabel);
}

TEST_CASE("bundle validation errors", "[scenario_io]") {
  auto doc = walkthrough_doc();

  SECTION("missing file") {
    CHECK(kind_of([] { load_bundle("/nonexistent/bundle.json"); }) ==
          ErrorKind::kFileNotFound);
  }
  SECTION("malformed JSON") {
    CHECK(kind_of([] { parse_bundle_text("{\"menu\": "); }) == ErrorKind::kSchema);
  }
  SECTION("probability on a sub-menu") {
    doc["distribution"]["Music"] = 0.0;
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kNotALeaf);
  }
  SECTION("probability on an unknown item") {
    doc["distribution"]["Podcasts"] = 0.0;
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kUnknownLabel);
  }
  SECTION("mass out of tolerance") {
    doc["distribution"]["Electronic"] = 0.12;
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kMassOutOfTolerance);
  }
  SECTION("missing scenarios") {
    doc.erase("scenarios");
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kSchema);
  }
  SECTION("empty scenario list") {
    doc["scenarios"] = nlohmann::json::array();
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kSchema);
  }
  SECTION("negative cost") {
    doc["scenarios"][0]["t_select_ms"] = -1;
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kInvalidCost);
  }
  SECTION("cost given as text") {
    doc["scenarios"][0]["t_select_ms"] = "fast";
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kSchema);
  }
  SECTION("unknown benefit mode") {
    doc["scenarios"][0]["benefit_mode"] = "double";
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kSchema);
  }
  SECTION("duplicate scenario name") {
    doc["scenarios"][1]["name"] = "scenario1";
    CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kDuplicateLabel);
  }
}

TEST_CASE("renormalization", "[scenario_io]") {
  auto doc = walkthrough_doc();
  doc["distribution"] = {{"Jazz", 0.5}, {"Rock", 0.4}};
  CHECK(kind_of([&] { parse_bundle(doc); }) == ErrorKind::kMassOutOfTolerance);
  const auto b = parse_bundle(doc, true);
  CHECK(b.dist.mass(b.menu.at("Jazz")) == 0.5 / 0.9);
  CHECK(b.dist.mass(b.menu.at("Rock")) == 0.4 / 0.9);
  CHECK(b.dist.mass(b.menu.at("Electronic")) == 0.0);
}

TEST_CASE("walkthrough round-trips through the canonical form",
          "[scenario_io]") {
  const auto& b = walkthrough();
  const std::string text = serialize_bundle(b);
  const auto again = parse_bundle_text(text);
  CHECK(again == b);
  CHECK(serialize_bundle(again) == text);
  // Whole milliseconds stay integers.
  CHECK(text.find("\"t_select_ms\": 2500,") != std::string::npos);
}

TEST_CASE("random bundles round-trip", "[scenario_io][property]") {
  testing::Rng rng(41);
  for (int round = 0; round < 100; ++round) {
    auto tree = testing::random_tree(rng, 30);
    auto dist = testing::random_distribution(rng, tree);
    std::vector<Scenario> scenarios;
    for (int i = 0; i < 3; ++i) {
      scenarios.push_back({"s" + std::to_string(i), testing::random_costs(rng),
                           i % 2 ? BenefitMode::kLiteral : BenefitMode::kSingleP,
                           i == 0 ? std::optional<std::string>("note, \"quoted\"")
                                  : std::nullopt});
    }
    const ScenarioBundle b{std::move(tree), std::move(dist), std::move(scenarios)};
    const auto text = serialize_bundle(b);
    const auto again = parse_bundle_text(text);
    REQUIRE(again == b);
    REQUIRE(serialize_bundle(again) == text);
  }
}

TEST_CASE("scenario 3 sweep grid", "[scenario_io]") {
  const auto grid = scenario3_grid();
  const auto points = grid.points();
  REQUIRE(points.size() == 18);
  for (const auto& p : points) {
    CHECK(p.t_select == p.t_correct);
    CHECK(p.t_inspect >= 500);
  }

  const auto& b = walkthrough();
  const std::vector<BenefitMode> both{BenefitMode::kSingleP, BenefitMode::kLiteral};
  const auto rows = run_sweep(b.menu, b.dist, grid, both);
  CHECK(rows.size() == 36);

  SECTION("invalid grids") {
    CHECK(kind_of([&] {
            run_sweep(b.menu, b.dist, SweepGrid{{}, {500}, {}}, both);
          }) == ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] {
            run_sweep(b.menu, b.dist, SweepGrid{{-5}, {500}, {}}, both);
          }) == ErrorKind::kInvalidCost);
  }
  SECTION("explicit correction axis") {
    const SweepGrid g{{100}, {500}, {500, 2500}};
    CHECK(g.points().size() == 2);
    CHECK(g.points()[1] == CostParams{100, 500, 2500});
  }
  SECTION("zero costs select the root") {
    const std::vector<BenefitMode> one{BenefitMode::kSingleP};
    const auto r = run_sweep(b.menu, b.dist, SweepGrid{{0}, {0}, {}}, one);
    REQUIRE(r.size() == 1);
    CHECK(r[0].selected == b.menu.root());
  }
}

}  // namespace
}  // namespace menu_adapt
