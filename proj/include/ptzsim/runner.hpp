#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptzsim/dataset.hpp"
#include "ptzsim/simulator.hpp"

namespace ptzsim {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitPartial = 3 };

/// Everything needed to execute (and re-execute) a batch of runs.
struct RunSpec {
  /// Sequence directories, or directories whose subdirectories are sequences.
  std::vector<std::filesystem::path> datasets;
  std::vector<SyntheticSpec> synthetic;
  std::vector<std::string> trackers;
  SimConfig config;
  std::filesystem::path output_dir;
  std::uint32_t seed = 1;
  int jobs = 1;
};

nlohmann::json manifest_json(const RunSpec& spec);
/// Rebuilds a RunSpec from a manifest written by cmd_run (output_dir left empty).
RunSpec run_spec_from_manifest(const nlohmann::json& manifest);

nlohmann::json synthetic_spec_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

/// Runs every tracker on every sequence and writes
///   runs/<tracker>__<sequence>.csv, frames/<tracker>__<sequence>.csv,
///   results.csv, aggregate.csv, scatter.csv and manifest.json.
/// Returns an ExitCode; individual run failures are logged and the rest continue.
int cmd_run(const RunSpec& spec, std::ostream& log);

/// Prints the ranked table for the per-run CSVs under `results_dir`
/// (its runs/ subdirectory when present).
int cmd_table(const std::filesystem::path& results_dir, std::ostream& out, std::ostream& err);

/// Writes a synthetic sequence in the on-disk dataset layout.
int cmd_gen(const SyntheticSpec& spec, const std::filesystem::path& out_dir, std::ostream& err);

std::string version_string();

}  // namespace ptzsim
