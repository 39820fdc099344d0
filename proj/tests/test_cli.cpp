#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "koszul/cli/cell_cache.hpp"
#include "koszul/cli/runner.hpp"
#include "koszul/cli/scenario_file.hpp"

using namespace koszul;
using namespace koszul::cli;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("koszul-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<Diagnostic> diagnostics_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const schema_error& e) {
    return e.diagnostics();
  }
  return {};
}

const char* kRnc4 = R"({
  "schema_version": 1,
  "kind": "betti",
  "geometry": {"type": "projective_space", "n": 1},
  "bundle": {"b": 0, "d": 4},
  "primes": [32003, 65521]
})";

int run_tool(const std::string& args, const std::string& out_file = "/dev/null") {
  const std::string cmd = std::string(KOSZUL_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("valid scenario parses") {
  auto s = parse_scenario(kRnc4);
  CHECK(s.kind == "betti");
  CHECK(s.bundle.d == 4);
  CHECK(s.primes == std::vector<std::uint32_t>{32003, 65521});
  CHECK(s.geometry->type == "projective_space");
}

TEST_CASE("schema violations carry fields and lines") {
  auto d = diagnostics_of(R"({
  "schema_version": 1,
  "kind": "betti",
  "geometry": {"type": "projective_space", "n": 1},
  "bundle": {"b": 0, "d": 0}
})");
  REQUIRE(d.size() == 1);
  CHECK(d[0].field == "/bundle/d");
  CHECK(d[0].line == 5);

  d = diagnostics_of(R"({"schema_version": 1, "kind": "betti", "colour": 3,
    "geometry": {"type": "projective_space", "n": 1}, "bundle": {"d": 1}})");
  REQUIRE(d.size() == 1);
  CHECK(d[0].field == "/colour");
  CHECK(d[0].message == "unknown key");

  d = diagnostics_of(R"({"schema_version": 1, "kind": "betti", "bundle": {"d": 1},
    "geometry": {"type": "projective_space", "n": 1, "degree": 2}})");
  REQUIRE(d.size() == 1);
  CHECK(d[0].field == "/geometry/degree");

  CHECK(diagnostics_of(R"({"schema_version": 1, "kind": "pie"})").at(0).field == "/kind");
  CHECK(diagnostics_of(R"({"schema_version": 2, "kind": "theorem1", "n": 1, "d": 3})").at(0).field ==
        "/schema_version");
  CHECK(diagnostics_of(R"({"schema_version": 1, "kind": "theorem1", "n": 1, "d": 3, "primes": [32004]})")
            .at(0)
            .message.find("not prime") != std::string::npos);
  CHECK(diagnostics_of(R"({"schema_version": 1, "kind": "theorem1", "d": 3})").at(0).field == "/n");
  CHECK(diagnostics_of("{\"kind\": \n  \"betti\",,}").at(0).line == 2);
  CHECK(diagnostics_of(R"({"schema_version": 1, "kind": "simplicial"})").size() == 1);
}

TEST_CASE("explicit unions are validated") {
  auto ok = parse_scenario(R"({"schema_version": 1, "kind": "betti", "bundle": {"d": 1},
    "geometry": {"type": "union", "ambient_dim": 2, "components": [
      {"label": "L", "generators": [[[1, [1, 0, 0]]]]},
      {"generators": [[[1, [0, 1, 0]], [-1, [0, 0, 1]]]]}]}})");
  auto spec = ok.geometry->build();
  CHECK(spec.components.size() == 2);
  CHECK(spec.components[1].label == "D1");
  auto d = diagnostics_of(R"({"schema_version": 1, "kind": "betti", "bundle": {"d": 1},
    "geometry": {"type": "union", "ambient_dim": 2, "components": [
      {"generators": [[[1, [1, 0, 0]], [1, [0, 2, 0]]]]}]}})");
  REQUIRE(d.size() == 1);
  CHECK(d[0].message == "generator is not homogeneous");
  d = diagnostics_of(R"({"schema_version": 1, "kind": "betti", "bundle": {"d": 1},
    "geometry": {"type": "union", "ambient_dim": 2, "components": [
      {"generators": [[[1, [1, 0]]]]}]}})");
  REQUIRE(d.size() == 1);
  CHECK(d[0].message == "expected 3 exponents");
}

TEST_CASE("disk cache stores, lists, evicts and clears") {
  auto dir = temp_dir("cache");
  std::vector<std::string> warnings;
  DiskCellStore store(dir, [&](const std::string& w) { warnings.push_back(w); });
  CHECK(store.list().empty());
  CellKey k{0xabcdefULL, 2, 1, 32003};
  KoszulCell c{2, 1, 10, 20, 5, 8, 7, 5};
  store.save(k, c);
  CHECK(store.load(k) == c);
  REQUIRE(store.list().size() == 1);

  {
    std::ofstream out(dir / DiskCellStore::file_name(k), std::ios::trunc);
    out << R"({"version":1,"key":{},"cell":{},"checksum":"0"})";
  }
  CHECK_FALSE(store.load(k).has_value());
  CHECK(warnings.size() == 1);
  CHECK_FALSE(fs::exists(dir / DiskCellStore::file_name(k)));

  store.save(k, c);
  std::string text = slurp(dir / DiskCellStore::file_name(k));
  text.replace(text.find("\"dim\":5"), 7, "\"dim\":6");
  {
    std::ofstream out(dir / DiskCellStore::file_name(k), std::ios::trunc);
    out << text;
  }
  CHECK(store.list().empty());
  CHECK(warnings.size() == 2);

  store.save(k, c);
  CHECK(store.clear() == 1);
  CHECK(store.list().empty());
  fs::remove_all(dir);
}

TEST_CASE("reruns hit the cache and reproduce the document") {
  auto dir = temp_dir("rerun");
  auto s = parse_scenario(kRnc4);
  RunOptions opt;
  opt.store = std::make_shared<DiskCellStore>(dir);
  auto first = run_scenario(s, opt);
  CHECK(first["run"]["cache"]["cells_computed"].get<int>() > 0);
  auto second = run_scenario(s, opt);
  CHECK(second["run"]["cache"]["cells_computed"].get<int>() == 0);
  CHECK(deterministic_dump(first) == deterministic_dump(second));
  auto fresh = run_scenario(s, RunOptions{});
  CHECK(deterministic_dump(first) == deterministic_dump(fresh));

  auto verifier = std::make_shared<VerifyingStore>(std::make_shared<DiskCellStore>(dir), 1.0, 3);
  RunOptions vopt;
  vopt.store = verifier;
  run_scenario(s, vopt);
  CHECK(verifier->checked() > 0);
  CHECK(verifier->mismatches().empty());
  fs::remove_all(dir);
}

TEST_CASE("text and csv are rendered from the JSON document alone") {
  auto doc = run_scenario(parse_scenario(kRnc4), RunOptions{});
  auto reparsed = nlohmann::json::parse(doc.dump());
  CHECK(render_text(reparsed) == render_text(doc));
  const std::string text = render_text(doc);
  CHECK(text.find("     1:  .  6  8  3  .  .") != std::string::npos);
  const std::string csv = render_csv(doc);
  CHECK(csv.find("32003,M,2,1,8,") != std::string::npos);
  CHECK(exit_code(doc) == kExitOk);
}

TEST_CASE("end-to-end exit codes") {
  auto dir = temp_dir("e2e");
  const std::string cache = " --cache-dir " + (dir / "cache").string();
  const std::string scenarios = SCENARIO_DIR;

  CHECK(run_tool("compute --scenario " + scenarios + "/rnc_d4.json --no-cache") == 0);
  CHECK(run_tool("compute --scenario " + scenarios + "/simplicial_n2.json" + cache,
                 (dir / "s.txt").string()) == 0);
  CHECK(slurp(dir / "s.txt").find("H^*(Delta) = (1, 0, 1)") != std::string::npos);

  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  };
  CHECK(run_tool("compute --scenario " +
                 write("d0.json", R"({"schema_version": 1, "kind": "betti",
                   "geometry": {"type": "projective_space", "n": 1}, "bundle": {"d": 0}})")) == 4);
  CHECK(run_tool("compute --scenario " + (dir / "missing.json").string()) == 4);
  CHECK(run_tool("compute --scenario " +
                 write("wrong.json", R"({"schema_version": 1, "kind": "simplicial",
                   "geometry": {"type": "coordinate_hyperplanes", "n": 1},
                   "expected_cohomology": [1, 0]})") + cache) == 2);
  CHECK(run_tool("compute --scenario " +
                 write("na.json", R"({"schema_version": 1, "kind": "lemma1",
                   "geometry": {"type": "coordinate_hyperplanes", "n": 1},
                   "bundle": {"b": -1, "d": 1}, "l_values": [3], "q_values": [0, 1]})") +
                 cache) == 3);
  CHECK(run_tool("compute --scenario " + scenarios + "/rnc_d3.json --no-cache --cap 5") == 5);
  CHECK(run_tool("compute --scenario " + scenarios + "/rnc_d3.json --prime 32004") == 4);

  // JSON output is byte-identical across runs apart from the run record.
  CHECK(run_tool("compute --format json --scenario " + scenarios + "/triangle_d2.json --threads 1" + cache,
                 (dir / "a.json").string()) == 0);
  CHECK(run_tool("compute --format json --scenario " + scenarios + "/triangle_d2.json --threads 3" + cache,
                 (dir / "b.json").string()) == 0);
  auto a = nlohmann::json::parse(slurp(dir / "a.json"));
  auto b = nlohmann::json::parse(slurp(dir / "b.json"));
  CHECK(b["run"]["cache"]["cells_computed"].get<int>() == 0);
  CHECK(deterministic_dump(a) == deterministic_dump(b));

  CHECK(run_tool("cache list" + cache, (dir / "list.txt").string()) == 0);
  CHECK_FALSE(slurp(dir / "list.txt").empty());
  CHECK(run_tool("cache verify --fraction 1 --scenario " + scenarios + "/triangle_d2.json" + cache) == 0);
  CHECK(run_tool("cache clear" + cache) == 0);
  CHECK(run_tool("cache list" + cache, (dir / "list2.txt").string()) == 0);
  CHECK(slurp(dir / "list2.txt").empty());
  fs::remove_all(dir);
}
