// Command-line front end: runs scenario files and manages the cell cache.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "koszul/cli/cell_cache.hpp"
#include "koszul/cli/runner.hpp"
#include "koszul/field.hpp"

namespace fs = std::filesystem;
using namespace koszul;
using namespace koszul::cli;

namespace {

fs::path default_cache_dir() {
  if (const char* d = std::getenv("KOSZUL_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "koszul";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "koszul";
  return fs::temp_directory_path() / "koszul-cache";
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* e = std::getenv("KOSZUL_THREADS"); e && *e) {
    char* end = nullptr;
    const long v = std::strtol(e, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    std::cerr << "warning: ignoring KOSZUL_THREADS='" << e << "'\n";
  }
  return omp_get_num_procs();
}

void print_diagnostics(const std::string& path, const schema_error& e) {
  for (const auto& d : e.diagnostics()) {
    std::cerr << path;
    if (d.line > 0) std::cerr << ":" << d.line;
    std::cerr << ": " << d.field << ": " << d.message << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul cohomology of section rings over prime fields"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, format = "text", cache_dir;
  std::uint32_t prime = 0;
  std::uint64_t cap = 0;
  int threads = 0;
  bool no_cache = false;

  auto* compute = app.add_subcommand("compute", "Run a scenario file");
  compute->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  compute->add_option("--prime", prime, "Run over this prime only");
  compute->add_option("--threads", threads, "Worker threads (overrides KOSZUL_THREADS)");
  compute->add_option("--cap", cap, "Largest differential size, in stored entries");
  compute->add_option("--out", out_path, "Write the output here instead of stdout");
  compute->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  compute->add_option("--cache-dir", cache_dir, "Cell cache directory");
  compute->add_flag("--no-cache", no_cache, "Do not read or write the cell cache");

  auto* validate = app.add_subcommand("validate", "Check a scenario file against the schema");
  validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

  auto* cache = app.add_subcommand("cache", "Inspect or maintain the cell cache");
  cache->add_option("--cache-dir", cache_dir, "Cell cache directory");
  cache->require_subcommand(1);
  cache->fallthrough();
  auto* list = cache->add_subcommand("list", "List cached cells");
  auto* clear = cache->add_subcommand("clear", "Delete every cached cell");
  auto* verify = cache->add_subcommand("verify", "Check entries; recompute a sample of a scenario's cells");
  double fraction = 0.25;
  std::uint64_t seed = 1;
  verify->add_option("--scenario", scenario_path, "Scenario whose cached cells are sampled");
  verify->add_option("--fraction", fraction, "Share of cached cells to recompute")
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--threads", threads, "Worker threads (overrides KOSZUL_THREADS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitSchema;
  }

  omp_set_num_threads(resolve_threads(threads));
  const fs::path dir = cache_dir.empty() ? default_cache_dir() : fs::path(cache_dir);

  try {
    if (*validate) {
      load_scenario(scenario_path);
      std::cout << scenario_path << ": valid\n";
      return kExitOk;
    }

    if (*compute) {
      ScenarioFile s = load_scenario(scenario_path);
      RunOptions opt;
      if (prime) {
        if (!is_prime(prime) || prime >= PrimeField::kMaxModulus) {
          std::cerr << "--prime " << prime << " must be a prime below 65536\n";
          return kExitSchema;
        }
        opt.prime = prime;
      }
      if (cap) opt.cap = cap;
      if (!no_cache) opt.store = std::make_shared<DiskCellStore>(dir);
      nlohmann::json doc = run_scenario(s, opt);
      std::string text = format == "json"  ? doc.dump(2) + "\n"
                         : format == "csv" ? render_csv(doc)
                                           : render_text(doc);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
          std::cerr << "cannot write " << out_path << "\n";
          return kExitFailure;
        }
        out << text;
      }
      const int rc = exit_code(doc);
      if (rc == kExitResource)
        for (const auto& r : doc["results"])
          for (const auto& t : r["tables"])
            for (const auto& g : t["gaps"])
              std::cerr << "resource cap: " << g["reason"].get<std::string>() << "\n";
      return rc;
    }

    auto store = std::make_shared<DiskCellStore>(dir);
    if (*list) {
      for (const auto& e : store->list())
        std::cout << DiskCellStore::file_name(e.key) << "  K_{" << e.cell.p << "," << e.cell.q
                  << "} = " << e.cell.dim_k << "\n";
      return kExitOk;
    }
    if (*clear) {
      std::cout << "removed " << store->clear() << " entries from " << dir.string() << "\n";
      return kExitOk;
    }
    if (*verify) {
      const auto entries = store->list();
      std::cout << entries.size() << " entries readable, " << store->evictions()
                << " evicted\n";
      if (scenario_path.empty()) return store->evictions() ? kExitViolation : kExitOk;
      ScenarioFile s = load_scenario(scenario_path);
      auto verifier = std::make_shared<VerifyingStore>(store, fraction, seed);
      RunOptions opt;
      opt.store = verifier;
      run_scenario(s, opt);
      const auto bad = verifier->mismatches();
      std::cout << verifier->checked() << " cells recomputed, " << bad.size() << " mismatches\n";
      for (const auto& k : bad)
        std::cout << "  mismatch " << DiskCellStore::file_name(k) << " (overwritten)\n";
      return bad.empty() && !store->evictions() ? kExitOk : kExitViolation;
    }
  } catch (const schema_error& e) {
    print_diagnostics(scenario_path, e);
    return kExitSchema;
  } catch (const input_error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitSchema;
  } catch (const config_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitSchema;
  } catch (const resource_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
