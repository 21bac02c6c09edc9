#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptzsim/errors.hpp"
#include "ptzsim/runner.hpp"

namespace {

struct SyntheticFlags {
  double duration = 4.0;
  double fps = 30.0;
  double speed = 10.0;
  double accel = 4.0;
  double target_size = 8.0;
  int panorama_width = 1440;
  double growth = 1.0;
};

void add_synthetic_flags(CLI::App* cmd, SyntheticFlags& f) {
  cmd->add_option("--duration", f.duration, "Synthetic sequence length in seconds")->capture_default_str();
  cmd->add_option("--fps", f.fps, "Synthetic frame rate")->capture_default_str();
  cmd->add_option("--target-speed", f.speed, "Pan velocity for moving targets (deg/s)")->capture_default_str();
  cmd->add_option("--target-accel", f.accel, "Pan acceleration for accelerating targets (deg/s^2)")
      ->capture_default_str();
  cmd->add_option("--target-size", f.target_size, "Target angular size (deg)")->capture_default_str();
  cmd->add_option("--pano-width", f.panorama_width, "Panorama width in pixels (height = width / 2)")
      ->capture_default_str();
  cmd->add_option("--growth", f.growth, "Target size factor per frame")->capture_default_str();
}

ptzsim::SyntheticSpec make_synthetic(const std::string& law, const SyntheticFlags& f, std::uint32_t seed) {
  ptzsim::SyntheticSpec s;
  s.law = ptzsim::motion_law_from_string(law);
  s.name = "synthetic-" + law;
  s.duration = f.duration;
  s.fps = f.fps;
  s.seed = seed;
  s.panorama_width = f.panorama_width;
  s.target_width = s.target_height = f.target_size;
  s.growth_per_frame = f.growth;
  if (s.law == ptzsim::MotionLaw::ConstantVelocity) s.velocity_pan = f.speed;
  if (s.law == ptzsim::MotionLaw::ConstantAcceleration) s.accel_pan = f.accel;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online PTZ tracking simulator and evaluation harness"};
  app.set_version_flag("--version", ptzsim::version_string());
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run trackers over sequences and write result tables");
  std::vector<std::string> datasets;
  std::vector<std::string> synthetic_laws;
  std::vector<std::string> trackers;
  std::string out_dir = "results";
  std::string prediction = "none";
  std::string timing = "measured";
  std::string manifest_path;
  std::string config_path;
  ptzsim::SimConfig cfg;
  std::uint32_t seed = 1;
  int jobs = 1;
  SyntheticFlags run_synth;
  run->add_option("--dataset", datasets, "Sequence directory, or a directory of sequences");
  run->add_option("--synthetic", synthetic_laws, "Synthetic motion law(s): static, constant-velocity, constant-acceleration")
      ->delimiter(',');
  run->add_option("--tracker", trackers, "Tracker name(s): ncc, meanshift, mosse, oracle, stationary")->delimiter(',');
  run->add_option("--execution-ratio", cfg.execution_ratio, "Multiplier on tracker processing cost")
      ->capture_default_str();
  run->add_option("--prediction", prediction, "none | model1 | model2 | model3")->capture_default_str();
  run->add_option("--prediction-gain", cfg.prediction_gain, "Scale on predicted displacement")->capture_default_str();
  run->add_option("--camera-speed", cfg.camera_speed, "Camera slew speed (deg/s)")->capture_default_str();
  run->add_option("--communication-delay", cfg.communication_delay, "Per-frame communication delay (s)")
      ->capture_default_str();
  run->add_option("--timing", timing, "measured | declared:<seconds>")->capture_default_str();
  run->add_option("--hfov", cfg.hfov, "Horizontal field of view (deg)")->capture_default_str();
  run->add_option("--width", cfg.image_width, "Camera image width")->capture_default_str();
  run->add_option("--height", cfg.image_height, "Camera image height")->capture_default_str();
  run->add_option("--config", config_path, "SimConfig JSON file (flags given explicitly are ignored)");
  run->add_option("--manifest", manifest_path, "Re-execute the runs described by a manifest.json");
  run->add_option("--seed", seed, "Seed for all synthetic data")->capture_default_str();
  run->add_option("--jobs", jobs, "Parallel runs")->capture_default_str();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  add_synthetic_flags(run, run_synth);

  // table
  auto* table = app.add_subcommand("table", "Print the ranked table for a results directory");
  std::string table_dir;
  table->add_option("results", table_dir, "Directory written by 'run'")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Write a synthetic sequence in the dataset layout");
  std::string gen_law = "constant-velocity";
  std::string gen_out;
  std::uint32_t gen_seed = 1;
  SyntheticFlags gen_synth;
  gen->add_option("--law", gen_law, "static | constant-velocity | constant-acceleration")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Texture seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();
  add_synthetic_flags(gen, gen_synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ptzsim::kExitOk : ptzsim::kExitUsage;
  }

  try {
    if (*run) {
      ptzsim::RunSpec spec;
      if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) {
          std::cerr << "error: cannot open manifest " << manifest_path << '\n';
          return ptzsim::kExitData;
        }
        spec = ptzsim::run_spec_from_manifest(nlohmann::json::parse(in));
      } else {
        cfg.prediction_model = ptzsim::prediction_model_from_string(prediction);
        cfg.timing = ptzsim::TimingMode::parse(timing);
        if (!config_path.empty()) {
          std::ifstream in(config_path);
          if (!in) {
            std::cerr << "error: cannot open config " << config_path << '\n';
            return ptzsim::kExitData;
          }
          cfg = nlohmann::json::parse(in).get<ptzsim::SimConfig>();
        }
        spec.config = cfg;
        spec.trackers = trackers;
        spec.seed = seed;
        for (const auto& d : datasets) spec.datasets.emplace_back(d);
        for (std::size_t k = 0; k < synthetic_laws.size(); ++k) {
          spec.synthetic.push_back(make_synthetic(synthetic_laws[k], run_synth, seed + static_cast<std::uint32_t>(k)));
        }
      }
      spec.output_dir = out_dir;
      spec.jobs = jobs;
      return ptzsim::cmd_run(spec, std::cout);
    }
    if (*table) return ptzsim::cmd_table(table_dir, std::cout, std::cerr);
    if (*gen) return ptzsim::cmd_gen(make_synthetic(gen_law, gen_synth, gen_seed), gen_out, std::cerr);
  } catch (const ptzsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ptzsim::kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ptzsim::kExitData;
  }
  return ptzsim::kExitUsage;
}
