#include "ptzsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "ptzsim/errors.hpp"
#include "ptzsim/report.hpp"

#ifndef PTZSIM_VERSION
#define PTZSIM_VERSION "0.0.0"
#endif

namespace ptzsim {
namespace fs = std::filesystem;

namespace {

struct SequenceSlot {
  std::string name;
  std::optional<fs::path> dir;
  std::optional<SyntheticSpec> synthetic;

  Sequence load() const { return dir ? load_sequence(*dir) : generate_synthetic_sequence(*synthetic); }
};

std::vector<SequenceSlot> collect_sequences(const RunSpec& spec) {
  std::vector<SequenceSlot> out;
  for (const auto& root : spec.datasets) {
    if (fs::exists(root / "meta.json")) {
      out.push_back({root.filename().string(), root, std::nullopt});
      continue;
    }
    if (!fs::is_directory(root)) throw DataError("dataset path " + root.string() + " is not a directory");
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) dirs.push_back(entry.path());
    }
    if (dirs.empty()) throw DataError("no sequences under " + root.string());
    std::sort(dirs.begin(), dirs.end());
    for (const auto& d : dirs) out.push_back({d.filename().string(), d, std::nullopt});
  }
  for (const auto& s : spec.synthetic) out.push_back({s.name, std::nullopt, s});
  return out;
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw DataError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct RunOutcome {
  std::optional<RunRow> row;
  std::string error;
};

}  // namespace

std::string version_string() { return PTZSIM_VERSION; }

nlohmann::json synthetic_spec_json(const SyntheticSpec& s) {
  return {{"name", s.name},
          {"duration", s.duration},
          {"fps", s.fps},
          {"seed", s.seed},
          {"panorama_width", s.panorama_width},
          {"start", {s.start.pan(), s.start.tilt()}},
          {"target_size", {s.target_width, s.target_height}},
          {"law", to_string(s.law)},
          {"velocity", {s.velocity_pan, s.velocity_tilt}},
          {"acceleration", {s.accel_pan, s.accel_tilt}},
          {"growth_per_frame", s.growth_per_frame}};
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
  SyntheticSpec s;
  s.name = j.at("name").get<std::string>();
  s.duration = j.at("duration").get<double>();
  s.fps = j.at("fps").get<double>();
  s.seed = j.at("seed").get<std::uint32_t>();
  s.panorama_width = j.at("panorama_width").get<int>();
  s.start = SphericalPoint(j.at("start").at(0).get<double>(), j.at("start").at(1).get<double>());
  s.target_width = j.at("target_size").at(0).get<double>();
  s.target_height = j.at("target_size").at(1).get<double>();
  s.law = motion_law_from_string(j.at("law").get<std::string>());
  s.velocity_pan = j.at("velocity").at(0).get<double>();
  s.velocity_tilt = j.at("velocity").at(1).get<double>();
  s.accel_pan = j.at("acceleration").at(0).get<double>();
  s.accel_tilt = j.at("acceleration").at(1).get<double>();
  s.growth_per_frame = j.value("growth_per_frame", 1.0);
  return s;
}

nlohmann::json manifest_json(const RunSpec& spec) {
  nlohmann::json datasets = nlohmann::json::array();
  for (const auto& d : spec.datasets) datasets.push_back(d.string());
  nlohmann::json synthetic = nlohmann::json::array();
  for (const auto& s : spec.synthetic) synthetic.push_back(synthetic_spec_json(s));
  return {{"version", version_string()},
          {"trackers", spec.trackers},
          {"datasets", datasets},
          {"synthetic", synthetic},
          {"seed", spec.seed},
          {"config", spec.config}};
}

RunSpec run_spec_from_manifest(const nlohmann::json& m) {
  RunSpec spec;
  for (const auto& d : m.at("datasets")) spec.datasets.emplace_back(d.get<std::string>());
  for (const auto& s : m.at("synthetic")) spec.synthetic.push_back(synthetic_spec_from_json(s));
  spec.trackers = m.at("trackers").get<std::vector<std::string>>();
  spec.seed = m.at("seed").get<std::uint32_t>();
  spec.config = m.at("config").get<SimConfig>();
  return spec;
}

int cmd_run(const RunSpec& spec, std::ostream& log) {
  if (spec.trackers.empty()) {
    log << "error: at least one tracker is required\n";
    return kExitUsage;
  }
  for (const auto& name : spec.trackers) {
    const auto known = tracker_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      log << "error: unknown tracker '" << name << "'\n";
      return kExitUsage;
    }
  }
  try {
    spec.config.validate();
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<SequenceSlot> sequences;
  try {
    sequences = collect_sequences(spec);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitData;
  }
  if (sequences.empty()) {
    log << "error: at least one sequence (--dataset or --synthetic) is required\n";
    return kExitUsage;
  }

  std::error_code ec;
  fs::create_directories(spec.output_dir / "runs", ec);
  if (!ec) fs::create_directories(spec.output_dir / "frames", ec);
  if (ec) {
    log << "error: cannot create output directory " << spec.output_dir << ": " << ec.message() << '\n';
    return kExitData;
  }

  struct Task {
    std::size_t tracker;
    std::size_t sequence;
  };
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < spec.trackers.size(); ++t)
    for (std::size_t s = 0; s < sequences.size(); ++s) tasks.push_back({t, s});

  std::vector<RunOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const auto& task = tasks[k];
      const std::string& tracker_name = spec.trackers[task.tracker];
      const SequenceSlot& slot = sequences[task.sequence];
      RunOutcome& outcome = outcomes[k];
      try {
        const Sequence seq = slot.load();
        auto tracker = make_tracker(tracker_name);
        const SimTrace trace = run_simulation(seq, *tracker, spec.config);
        RunRow row{tracker_name, slot.name, aggregate(trace.records, trace.total)};

        const std::string stem = tracker_name + "__" + slot.name + ".csv";
        std::ostringstream run_csv;
        write_run_csv(run_csv, std::span<const RunRow>(&row, 1));
        write_atomically(spec.output_dir / "runs" / stem, run_csv.str());
        std::ostringstream frame_csv;
        write_frame_csv(frame_csv, trace.records);
        write_atomically(spec.output_dir / "frames" / stem, frame_csv.str());
        outcome.row = std::move(row);
      } catch (const std::exception& e) {
        outcome.error = tracker_name + " on " + slot.name + ": " + e.what();
      }
    }
  };
  const int jobs = std::clamp(spec.jobs, 1, static_cast<int>(tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  std::vector<RunRow> rows;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& o : outcomes) {
    if (o.row) {
      rows.push_back(*o.row);
    } else {
      log << "run failed: " << o.error << '\n';
      failures.push_back(o.error);
    }
  }

  try {
    std::ostringstream results;
    write_run_csv(results, rows);
    write_atomically(spec.output_dir / "results.csv", results.str());

    const auto summaries = summarize(rows);
    std::ostringstream aggregate_csv;
    write_aggregate_csv(aggregate_csv, summaries);
    write_atomically(spec.output_dir / "aggregate.csv", aggregate_csv.str());

    std::vector<NamedResult> named;
    for (const auto& s : summaries) named.push_back({s.tracker, s.mean});
    std::ostringstream scatter;
    write_scatter_csv(scatter, scatter_points(named));
    write_atomically(spec.output_dir / "scatter.csv", scatter.str());

    nlohmann::json manifest = manifest_json(spec);
    manifest["failures"] = failures;
    write_atomically(spec.output_dir / "manifest.json", manifest.dump(2) + "\n");

    print_table(log, summaries);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitData;
  }
  if (rows.empty()) return kExitData;
  return failures.empty() ? kExitOk : kExitPartial;
}

int cmd_table(const fs::path& results_dir, std::ostream& out, std::ostream& err) {
  const fs::path dir = fs::is_directory(results_dir / "runs") ? results_dir / "runs" : results_dir;
  if (!fs::is_directory(dir)) {
    err << "error: " << results_dir << " is not a directory\n";
    return kExitData;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "error: no result CSVs under " << dir << '\n';
    return kExitData;
  }
  std::vector<RunRow> rows;
  try {
    for (const auto& f : files) {
      std::ifstream in(f);
      auto part = read_run_csv(in, f.filename().string());
      rows.insert(rows.end(), part.begin(), part.end());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  if (rows.empty()) {
    err << "error: result CSVs contain no rows\n";
    return kExitData;
  }
  print_table(out, summarize(rows));
  return kExitOk;
}

int cmd_gen(const SyntheticSpec& spec, const fs::path& out_dir, std::ostream& err) {
  try {
    write_sequence(generate_synthetic_sequence(spec), out_dir);
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace ptzsim
