// Scenario execution: runs a parsed configuration, writes its artifacts
// (series CSVs, report.json, state.bin) into the output directory, prints a
// one-line summary per check, and returns the process status
// (0 pass, 1 tolerance failure, 3 I/O failure).
#pragma once

#include <filesystem>
#include <optional>

#include <g5/config.hpp>
#include <g5/covariance.hpp>
#include <g5/io.hpp>

namespace g5 {

struct ScenarioArtifacts {
  nlohmann::ordered_json report;
  std::vector<std::pair<std::string, std::vector<SeriesRow>>> series;
  std::optional<ScalarWavefunction> final_state;
  std::optional<PauliSpinor> final_spinor;
};

/// Write report.json, each named series CSV, and the final state dump into
/// dir (created if needed). Contents are deterministic for identical inputs.
void emit_report(const ScenarioArtifacts& artifacts, const std::filesystem::path& dir);

/// Seed override from the environment variable G5_SEED, else the given one.
unsigned effective_seed(unsigned config_seed);

/// Run the randomized invariant suites (group, geometry, gamma algebra);
/// returns 0 when every suite passes.
int run_check(unsigned seed);

int run_scenario(const ScenarioConfig& cfg);

}  // namespace g5
