#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch2/catch_amalgamated.hpp"
#include "menu_adapt/cli.hpp"
#include "support/generators.hpp"

namespace menu_adapt {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string golden(const std::string& name) {
  return read_file(std::string(MENU_ADAPT_GOLDEN_DIR) + "/" + name);
}

long count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  long n = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

const std::string kBundle = testing::fixture("walkthrough.json");
const std::string kDegenerate = testing::fixture("degenerate.json");

class TempFile {
 public:
  explicit TempFile(const std::string& name)
      : path_(std::filesystem::temp_directory_path() /
              ("menu_adapt_" + std::to_string(::getpid()) + "_" + name)) {}
  ~TempFile() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST_CASE("trace", "[cli]") {
  SECTION("Music to Top 50") {
    const auto r = run({"trace", kBundle, "scenario1", "Music", "Top 50"});
    REQUIRE(r.code == 0);
    CHECK(count_lines_starting(r.out, "CORRECT ") == 2);
    CHECK(count_lines_starting(r.out, "SELECT ") == 3);
    CHECK(r.out == golden("trace_scenario1_music_top50.txt"));
  }
  SECTION("pre-selected target") {
    const auto r = run({"trace", kBundle, "scenario1", "Electronic", "Electronic"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "INSPECT Electronic 100.000\nTOTAL 100.000\n");
  }
  SECTION("unknown label") {
    const auto r = run({"trace", kBundle, "scenario1", "NoSuchItem", "X"});
    CHECK(r.code == 1);
    CHECK(r.err.find("NoSuchItem") != std::string::npos);
  }
  SECTION("target must be a leaf") {
    CHECK(run({"trace", kBundle, "scenario1", "Music", "Radio"}).code == 1);
  }
  SECTION("flags instead of positionals") {
    const auto r = run({"trace", "--bundle", kBundle, "--scenario", "scenario1",
                        "Music", "Top 50"});
    CHECK(r.out == golden("trace_scenario1_music_top50.txt"));
  }
}

TEST_CASE("adapt", "[cli]") {
  SECTION("scenario 1") {
    const auto r = run({"adapt", kBundle, "scenario1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("selected: Electronic\n", 0) == 0);
    CHECK(r.out == golden("adapt_scenario1.txt"));
  }
  SECTION("scenario 2") {
    const auto r = run({"adapt", "--bundle", kBundle, "--scenario", "scenario2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("selected: Entertainment\n", 0) == 0);
    CHECK(r.out == golden("adapt_scenario2.txt"));
  }
  SECTION("literal benefit override") {
    const auto r = run({"adapt", kBundle, "scenario1", "--mode", "literal"});
    CHECK(r.out.rfind("selected: Listen\n", 0) == 0);
  }
  SECTION("degenerate bundle") {
    const auto r = run({"adapt", kDegenerate, "scenario2"});
    CHECK(r.out.rfind("selected: Charts\n", 0) == 0);
  }
  SECTION("table to a file") {
    TempFile csv("adapt.csv");
    const auto r = run({"adapt", kBundle, "scenario1", "--out", csv.str()});
    REQUIRE(r.code == 0);
    CHECK(r.out == "selected: Electronic\n");
    const auto g = golden("adapt_scenario1.txt");
    CHECK(read_file(csv.str()) == g.substr(g.find('\n') + 1));
  }
  SECTION("unknown scenario") {
    CHECK(run({"adapt", kBundle, "scenario3"}).code == 1);
  }
  SECTION("missing bundle") {
    CHECK(run({"adapt", "/nonexistent.json", "scenario1"}).code == 1);
  }
}

TEST_CASE("compare", "[cli]") {
  SECTION("scenario 2 disagrees with greedy") {
    const auto r = run({"compare", kBundle, "scenario2"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "policy,selected,expected_time_ms\n"
          "greedy,Electronic,6145.000\n"
          "utility,Entertainment,2021.000\n");
  }
  SECTION("scenario 1 agrees") {
    const auto r = run({"compare", kBundle, "scenario1"});
    CHECK(r.out.find("greedy,Electronic,") != std::string::npos);
    CHECK(r.out.find("utility,Electronic,") != std::string::npos);
  }
  SECTION("degenerate bundle") {
    const auto r = run({"compare", kDegenerate, "scenario1"});
    CHECK(r.out ==
          "policy,selected,expected_time_ms\n"
          "greedy,Charts,100.000\n"
          "utility,Charts,100.000\n");
  }
}

TEST_CASE("sweep", "[cli]") {
  SECTION("shipped grid") {
    const auto r = run({"sweep", kBundle});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 18 * 2);
    CHECK(r.out.find(",single-p,Listen,") != std::string::npos);
  }
  SECTION("one point, one mode") {
    const auto r = run({"sweep", kBundle, "--t-inspect", "2000", "--t-select",
                        "1000", "--mode", "single-p"});
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
  }
  SECTION("one point, both modes") {
    const auto r =
        run({"sweep", kBundle, "--t-inspect", "2000", "--t-select", "1000"});
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  }
  SECTION("zero costs pick the root") {
    const auto r = run({"sweep", kBundle, "--t-inspect", "0", "--t-select", "0",
                        "--mode", "single-p"});
    CHECK(r.out.find("0.000,0.000,0.000,single-p,Entertainment,0.000\n") !=
          std::string::npos);
  }
  SECTION("invalid grids") {
    CHECK(run({"sweep", kBundle, "--t-inspect=-5"}).code == 1);
    CHECK(run({"sweep", kBundle, "--t-inspect", "fast"}).code == 1);
  }
}

TEST_CASE("verify", "[cli]") {
  SECTION("walkthrough passes") {
    const auto r = run({"verify", kBundle});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS oracle-pairs scenario1 228/228") != std::string::npos);
    CHECK(r.out.find("PASS oracle-pairs scenario2 228/228") != std::string::npos);
    CHECK(r.out.find("PASS monte-carlo scenario1 Electronic") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  SECTION("variant report") {
    TempFile csv("variants.csv");
    const auto r = run({"verify", kBundle, "--out", csv.str()});
    CHECK(r.code == 0);
    const auto text = read_file(csv.str());
    CHECK(text.rfind("variant,scenario,selected,max_abs_dev_ms\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  }
  SECTION("corrupted probability") {
    TempFile bad("bad.json");
    auto text = read_file(kBundle);
    const auto at = text.find("\"Electronic\": 0.22");
    REQUIRE(at != std::string::npos);
    text.replace(at, 18, "\"Electronic\": 0.52");
    std::ofstream(bad.str()) << text;
    CHECK(run({"verify", bad.str()}).code == 1);
  }
}

TEST_CASE("output is deterministic", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"adapt", kBundle, "scenario1"},
           {"sweep", kBundle},
           {"verify", kBundle, "--samples", "2000", "--seed", "5"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"trace", kBundle, "scenario1", "Music"}).code == 1);
  CHECK(run({"adapt", kBundle, "scenario1", "extra"}).code == 1);
  CHECK(run({"adapt", "--help"}).code == 0);
}

}  // namespace
}  // namespace menu_adapt
