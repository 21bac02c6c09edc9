#include "ptzsim/simulator.hpp"

#include <cmath>

#include "ptzsim/errors.hpp"

namespace ptzsim {

void SimConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
  };
  require(execution_ratio >= 0.0 && std::isfinite(execution_ratio), "execution_ratio must be >= 0");
  require(camera_speed > 0.0, "camera_speed must be > 0");
  require(communication_delay >= 0.0 && std::isfinite(communication_delay), "communication_delay must be >= 0");
  require(fps >= 0.0 && std::isfinite(fps), "fps must be >= 0");
  require(std::isfinite(prediction_gain), "prediction_gain must be finite");
  require(hfov > 0.0 && hfov < 180.0, "hfov must lie in (0, 180)");
  require(image_width > 0 && image_height > 0, "image dimensions must be positive");
}

void to_json(nlohmann::json& j, const SimConfig& cfg) {
  j = nlohmann::json{{"execution_ratio", cfg.execution_ratio},
                     {"camera_speed", cfg.camera_speed},
                     {"communication_delay", cfg.communication_delay},
                     {"fps", cfg.fps},
                     {"prediction_model", to_string(cfg.prediction_model)},
                     {"prediction_gain", cfg.prediction_gain},
                     {"hfov", cfg.hfov},
                     {"image_width", cfg.image_width},
                     {"image_height", cfg.image_height},
                     {"timing", cfg.timing.to_string()}};
}

void from_json(const nlohmann::json& j, SimConfig& cfg) {
  SimConfig d;
  cfg.execution_ratio = j.value("execution_ratio", d.execution_ratio);
  cfg.camera_speed = j.value("camera_speed", d.camera_speed);
  cfg.communication_delay = j.value("communication_delay", d.communication_delay);
  cfg.fps = j.value("fps", d.fps);
  cfg.prediction_model = prediction_model_from_string(j.value("prediction_model", std::string("none")));
  cfg.prediction_gain = j.value("prediction_gain", d.prediction_gain);
  cfg.hfov = j.value("hfov", d.hfov);
  cfg.image_width = j.value("image_width", d.image_width);
  cfg.image_height = j.value("image_height", d.image_height);
  cfg.timing = TimingMode::parse(j.value("timing", std::string("measured")));
}

double motion_delay(const CameraPose& from, const CameraPose& to, double speed) {
  if (!(speed > 0.0)) throw InvalidArgument("camera speed must be > 0");
  return angular_distance(from.aim, to.aim) / speed;
}

std::optional<int> next_processed_frame(int current_index, double busy_until, double fps, int frame_count) {
  if (!(fps > 0.0)) throw InvalidArgument("fps must be > 0");
  // Frames stamped within this many frame periods of busy_until count as
  // captured at that instant.
  constexpr double kTolerance = 1e-9;
  const double slots = std::floor(busy_until * fps + kTolerance);
  const double candidate = std::max(static_cast<double>(current_index) + 1.0, slots + 1.0);
  if (candidate >= frame_count) return std::nullopt;
  return static_cast<int>(candidate);
}

CameraPose camera_controller(const TrackerOutput& output, const CameraPose& pose,
                             const std::optional<AngularVector>& prediction) {
  if (!output.box) return pose;
  const SphericalPoint observed = backproject_image_to_sphere(output.box->center(), pose);
  double pan = observed.pan();
  double tilt = observed.tilt();
  if (prediction) {
    pan += prediction->pan;
    tilt = std::clamp(tilt + prediction->tilt, -90.0, 90.0);
  }
  CameraPose next = pose;
  next.aim = SphericalPoint(pan, tilt);
  return next;
}

SimTrace run_simulation(const Sequence& seq, Tracker& tracker, const SimConfig& cfg) {
  cfg.validate();
  if (seq.frame_count() == 0) throw DataError("sequence has no frames");
  if (!seq.initial_box.present) throw MissingGroundTruth("sequence has no frame-0 target");
  if (cfg.fps > 0.0 && std::abs(cfg.fps - seq.fps) > 1e-9 * seq.fps) {
    throw InvalidArgument("configured fps differs from the sequence frame rate");
  }
  const double fps = seq.fps;

  CameraPose pose(seq.initial_box.center, cfg.hfov, cfg.image_width, cfg.image_height);
  auto* oracle = dynamic_cast<GroundTruthConsumer*>(&tracker);

  SimTrace trace;
  trace.total = seq.frame_count();
  TrackHistory history;
  double busy_until = 0.0;

  std::optional<int> index = 0;
  while (index) {
    const int i = *index;
    const double t = seq.timestamp(i);
    const Frame view = render_view(seq.panorama(i), pose);

    std::optional<BoundingBox> truth;
    if (auto entry = seq.ground_truth_at(i)) truth = ground_truth_in_view(*entry, pose);

    if (i == 0) {
      auto init_box = ground_truth_in_view(seq.initial_box, pose);
      if (!init_box) throw MissingGroundTruth("frame-0 target not visible from the initial pose");
      tracker.init(view, *init_box);
    }
    if (oracle) oracle->observe_ground_truth(truth);
    const TrackerOutput out = timed_update(tracker, view, cfg.timing);

    const double execution = out.processing_cost * cfg.execution_ratio;
    busy_until = t + execution + cfg.communication_delay;
    trace.ledger.execution += execution;
    trace.ledger.communication += cfg.communication_delay;

    std::optional<AngularVector> prediction;
    if (out.box) {
      const SphericalPoint observed = backproject_image_to_sphere(out.box->center(), pose);
      history.push(observed, t);
      if (cfg.prediction_model != PredictionModel::None) {
        const MotionEstimate est = estimate_motion(history);
        if (supports(cfg.prediction_model, est)) {
          const double move_time = angular_distance(pose.aim, observed) / cfg.camera_speed;
          const double dt = lookahead_interval(execution, move_time);
          prediction = cfg.prediction_gain * predict_displacement(cfg.prediction_model, est, dt);
        }
      }
    }
    const CameraPose next_pose = camera_controller(out, pose, prediction);
    const double motion = motion_delay(pose, next_pose, cfg.camera_speed);
    busy_until += motion;
    trace.ledger.motion += motion;
    trace.busy_time += execution + cfg.communication_delay + motion;
    trace.ledger_history.push_back(trace.ledger);

    trace.records.push_back(evaluate_frame(i, t, pose, truth, out.box));
    pose = next_pose;
    index = next_processed_frame(i, busy_until, fps, trace.total);
  }
  trace.processed = static_cast<int>(trace.records.size());
  return trace;
}

}  // namespace ptzsim
