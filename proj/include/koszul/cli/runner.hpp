#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "koszul/cli/scenario_file.hpp"
#include "koszul/koszul.hpp"

namespace koszul::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitViolation = 2,
  kExitNotApplicable = 3,
  kExitSchema = 4,
  kExitResource = 5,
};

struct RunOptions {
  std::optional<std::uint32_t> prime;   // overrides the scenario's primes
  std::optional<std::uint64_t> cap;     // overrides the scenario's cap
  std::shared_ptr<CellStore> store;
};

/// Runs a validated scenario. The document holds every cell, rank, verdict and
/// hypothesis flag; everything outside its "run" member is deterministic.
nlohmann::json run_scenario(const ScenarioFile& scenario, const RunOptions& options);

/// Exit code recorded in a run document.
int exit_code(const nlohmann::json& doc);

/// Human-readable report; tables use rows q and columns p. Derived from the
/// document alone.
std::string render_text(const nlohmann::json& doc);
/// One line per cell: prime,table,p,q,dim,dim_middle,rank_in,rank_out.
std::string render_csv(const nlohmann::json& doc);

/// The document without its "run" member, as compared across reruns.
std::string deterministic_dump(const nlohmann::json& doc);

}  // namespace koszul::cli
