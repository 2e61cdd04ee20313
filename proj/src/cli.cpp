#include "menu_adapt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "menu_adapt/adaptation.hpp"
#include "menu_adapt/errors.hpp"
#include "menu_adapt/format.hpp"
#include "menu_adapt/interaction_sim.hpp"
#include "menu_adapt/oracle.hpp"
#include "menu_adapt/scenario_io.hpp"

namespace menu_adapt::cli {
namespace {

struct Options {
  std::string bundle;
  std::string scenario;
  std::string mode;
  std::string out;
  std::uint64_t seed = 42;
  std::uint64_t samples = 100000;
  bool renormalize = false;
  std::vector<std::string> positional;

  // Sweep grid; empty t_correct ties it to t_select.
  std::vector<double> t_inspect = scenario3_grid().t_inspect;
  std::vector<double> t_select = scenario3_grid().t_select;
  std::vector<double> t_correct;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--bundle", o.bundle, "Scenario bundle (JSON)");
  cmd->add_option("--scenario", o.scenario, "Scenario name within the bundle");
  cmd->add_option("--mode", o.mode, "Benefit mode override")
      ->check(CLI::IsMember({"literal", "single-p"}));
  cmd->add_option("--out", o.out, "Write the CSV/trace output to this file");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--samples", o.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--renormalize", o.renormalize,
                "Rescale a distribution that does not sum to 1");
  cmd->add_option("args", o.positional, "Positional arguments");
}

// Fills `slot` from the next positional argument unless a flag set it.
void take(std::string& slot, std::deque<std::string>& pos, const char* what) {
  if (!slot.empty()) return;
  if (pos.empty()) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          fmt::format("missing {}", what));
  }
  slot = pos.front();
  pos.pop_front();
}

void expect_consumed(const std::deque<std::string>& pos) {
  if (!pos.empty()) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "unexpected argument '" + pos.front() + "'");
  }
}

// Writes to --out when given, otherwise to stdout.
void emit(const Options& o, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (o.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) {
    throw ValidationError(ErrorKind::kFileNotFound,
                          "cannot write '" + o.out + "'");
  }
  body(file);
}

BenefitMode mode_for(const Options& o, const Scenario& s) {
  return o.mode.empty() ? s.mode : parse_benefit_mode(o.mode);
}

int cmd_trace(Options& o, std::ostream& out) {
  std::deque<std::string> pos(o.positional.begin(), o.positional.end());
  take(o.bundle, pos, "bundle path");
  take(o.scenario, pos, "scenario name");
  std::string start_label, target_label;
  take(start_label, pos, "start label");
  take(target_label, pos, "target label");
  expect_consumed(pos);

  const auto bundle = load_bundle(o.bundle, o.renormalize);
  const auto& scenario = bundle.scenario(o.scenario);
  const auto& tree = bundle.menu;
  const NodeId start = tree.at(start_label);
  const NodeId target = tree.at(target_label);

  const auto trace = simulate_trace(tree, scenario.costs, start, target);
  const double closed = interaction_cost(tree, scenario.costs, start, target);
  if (trace_cost(trace) != closed) {
    throw InvariantViolation(fmt::format(
        "trace total {} differs from closed form {}", trace_cost(trace), closed));
  }
  emit(o, out, [&](std::ostream& os) { write_trace(os, tree, trace); });
  return kSuccess;
}

int cmd_adapt(Options& o, std::ostream& out) {
  std::deque<std::string> pos(o.positional.begin(), o.positional.end());
  take(o.bundle, pos, "bundle path");
  take(o.scenario, pos, "scenario name");
  expect_consumed(pos);

  const auto bundle = load_bundle(o.bundle, o.renormalize);
  const auto& scenario = bundle.scenario(o.scenario);
  const auto table = utility_table(bundle.menu, scenario.costs, bundle.dist,
                                   mode_for(o, scenario));
  const auto result = select_adaptation(table);

  out << "selected: " << bundle.menu.label(result.selected);
  if (result.tie_broken) out << " (tie broken by depth, then menu order)";
  out << '\n';
  emit(o, out, [&](std::ostream& os) {
    write_utility_csv(os, bundle.menu, table, result);
  });
  return kSuccess;
}

int cmd_compare(Options& o, std::ostream& out) {
  std::deque<std::string> pos(o.positional.begin(), o.positional.end());
  take(o.bundle, pos, "bundle path");
  take(o.scenario, pos, "scenario name");
  expect_consumed(pos);

  const auto bundle = load_bundle(o.bundle, o.renormalize);
  const auto& scenario = bundle.scenario(o.scenario);
  const auto& tree = bundle.menu;
  const NodeId greedy = greedy_adaptation(tree, bundle.dist);
  const NodeId best =
      select_adaptation(utility_table(tree, scenario.costs, bundle.dist,
                                      mode_for(o, scenario)))
          .selected;

  emit(o, out, [&](std::ostream& os) {
    os << "policy,selected,expected_time_ms\n";
    for (auto [policy, node] : {std::pair{"greedy", greedy},
                                std::pair{"utility", best}}) {
      os << policy << ',' << csv_field(tree.label(node)) << ','
         << format_ms(
                expected_selection_time(tree, scenario.costs, bundle.dist, node))
         << '\n';
    }
  });
  return kSuccess;
}

int cmd_sweep(Options& o, std::ostream& out) {
  std::deque<std::string> pos(o.positional.begin(), o.positional.end());
  take(o.bundle, pos, "bundle path");
  expect_consumed(pos);

  const auto bundle = load_bundle(o.bundle, o.renormalize);
  const SweepGrid grid{o.t_inspect, o.t_select, o.t_correct};
  std::vector<BenefitMode> modes{BenefitMode::kSingleP, BenefitMode::kLiteral};
  if (!o.mode.empty()) modes = {parse_benefit_mode(o.mode)};

  const auto rows = run_sweep(bundle.menu, bundle.dist, grid, modes);
  emit(o, out, [&](std::ostream& os) { write_sweep_csv(os, bundle.menu, rows); });
  return kSuccess;
}

class CheckLog {
 public:
  explicit CheckLog(std::ostream& out) : out_(out) {}

  void record(bool ok, const std::string& name, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
    ++total_;
    if (ok) ++passed_;
  }

  bool all_passed() const { return passed_ == total_; }

  void summary() const {
    out_ << "verify: " << passed_ << '/' << total_ << " checks passed\n";
  }

 private:
  std::ostream& out_;
  int total_ = 0;
  int passed_ = 0;
};

int cmd_verify(Options& o, std::ostream& out) {
  std::deque<std::string> pos(o.positional.begin(), o.positional.end());
  take(o.bundle, pos, "bundle path");
  expect_consumed(pos);

  const auto bundle = load_bundle(o.bundle, o.renormalize);
  const auto& tree = bundle.menu;
  CheckLog log(out);

  for (const auto& scenario : bundle.scenarios) {
    const auto& costs = scenario.costs;
    int pairs = 0;
    int agree = 0;
    for (const auto& node : tree.nodes()) {
      for (NodeId leaf : tree.leaves()) {
        ++pairs;
        const auto trace = simulate_trace(tree, costs, node.id, leaf);
        const double closed = interaction_cost(tree, costs, node.id, leaf);
        const double naive = oracle::naive_cost(tree, costs, node.id, leaf);
        const auto counts = count_actions(trace);
        const int common_depth = tree.depth(lca(tree, node.id, leaf));
        const bool structural =
            counts.select == tree.depth(leaf) - common_depth &&
            counts.correct == tree.depth(node.id) - common_depth;
        if (trace_cost(trace) == closed &&
            std::abs(naive - closed) <= kUtilityTieTolerance && structural) {
          ++agree;
        }
      }
    }
    log.record(agree == pairs, "oracle-pairs",
               fmt::format("{} {}/{}", scenario.name, agree, pairs));

    for (BenefitMode mode : {BenefitMode::kSingleP, BenefitMode::kLiteral}) {
      const double root_u =
          utility(tree, costs, bundle.dist, tree.root(), mode);
      const double root_e =
          expected_selection_time(tree, costs, bundle.dist, tree.root());
      log.record(root_u == root_e, "root-utility",
                 fmt::format("{} {}", scenario.name, to_string(mode)));
    }

    const NodeId chosen =
        select_adaptation(utility_table(tree, costs, bundle.dist,
                                        mode_for(o, scenario)))
            .selected;
    const double expected =
        expected_selection_time(tree, costs, bundle.dist, chosen);
    const auto mc = monte_carlo_expected_time(tree, costs, bundle.dist, chosen,
                                              o.samples, o.seed);
    const double bound = 3.0 * mc.standard_error();
    log.record(std::abs(mc.mean - expected) <= bound, "monte-carlo",
               fmt::format("{} {} mean={} expected={} bound={}", scenario.name,
                           tree.label(chosen), format_ms(mc.mean),
                           format_ms(expected), format_ms(bound)));
  }

  if (!o.out.empty()) {
    std::vector<oracle::NamedCosts> named;
    for (const auto& s : bundle.scenarios) named.push_back({s.name, s.costs});
    const auto mode =
        o.mode.empty() ? kDefaultBenefitMode : parse_benefit_mode(o.mode);
    const auto rows = oracle::variant_report(tree, bundle.dist, named, mode);
    emit(o, out, [&](std::ostream& os) {
      oracle::write_variant_csv(os, tree, rows);
    });
  }

  log.summary();
  return log.all_passed() ? kSuccess : kInvariantViolation;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-aware adaptation of hierarchical menus", "menu_adapt"};
  app.require_subcommand(1);
  Options o;

  auto* trace = app.add_subcommand(
      "trace", "Print the simulated action sequence from START to TARGET");
  auto* adapt = app.add_subcommand(
      "adapt", "Select the adaptation minimizing utility; emit the table");
  auto* compare = app.add_subcommand(
      "compare", "Greedy vs utility-based adaptation, with expected times");
  auto* sweep = app.add_subcommand(
      "sweep", "Selected adaptation over a grid of cost parameters");
  auto* verify = app.add_subcommand(
      "verify", "Cross-check simulator, closed form, oracle and Monte Carlo");
  for (auto* cmd : {trace, adapt, compare, sweep, verify}) add_common(cmd, o);
  sweep->add_option("--t-inspect", o.t_inspect, "Inspection costs (ms)")
      ->delimiter(',');
  sweep->add_option("--t-select", o.t_select, "Selection costs (ms)")
      ->delimiter(',');
  sweep->add_option("--t-correct", o.t_correct,
                    "Correction costs (ms); default: equal to t_select")
      ->delimiter(',');

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationFailure;
  }

  try {
    if (*trace) return cmd_trace(o, out);
    if (*adapt) return cmd_adapt(o, out);
    if (*compare) return cmd_compare(o, out);
    if (*sweep) return cmd_sweep(o, out);
    return cmd_verify(o, out);
  } catch (const ValidationError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kValidationFailure;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
}

}  // namespace menu_adapt::cli
