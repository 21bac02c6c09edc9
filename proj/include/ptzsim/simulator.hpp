#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "ptzsim/dataset.hpp"
#include "ptzsim/metrics.hpp"
#include "ptzsim/prediction.hpp"
#include "ptzsim/trackers.hpp"

namespace ptzsim {

struct SimConfig {
  /// Multiplier on tracker processing cost; 0 ignores tracker speed.
  double execution_ratio = 1.0;
  /// Camera slew speed in deg/s.
  double camera_speed = 60.0;
  double communication_delay = 0.0;
  /// Frame rate of the capture schedule; 0 uses the sequence's own rate.
  double fps = 0.0;
  PredictionModel prediction_model = PredictionModel::None;
  /// Scales the predicted displacement; -1 gives an adversarial predictor.
  double prediction_gain = 1.0;
  double hfov = 60.0;
  int image_width = 320;
  int image_height = 240;
  TimingMode timing = TimingMode::Measured();

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

void to_json(nlohmann::json& j, const SimConfig& cfg);
void from_json(const nlohmann::json& j, SimConfig& cfg);

/// Cumulative simulated time charged per delay category, in seconds.
struct DelayLedger {
  double execution = 0.0;
  double motion = 0.0;
  double communication = 0.0;

  double total() const { return execution + motion + communication; }
  friend bool operator==(const DelayLedger&, const DelayLedger&) = default;
};

struct SimTrace {
  std::vector<FrameRecord> records;  // processed frames only
  int processed = 0;                 // F_NP
  int total = 0;                     // F_TO
  DelayLedger ledger;
  /// Ledger snapshot after each processed frame.
  std::vector<DelayLedger> ledger_history;
  /// Sum of the busy intervals of every processed frame.
  double busy_time = 0.0;

  friend bool operator==(const SimTrace&, const SimTrace&) = default;
};

/// Time for the camera to slew between the two aims.
double motion_delay(const CameraPose& from, const CameraPose& to, double speed);

/// First frame after `current_index` captured strictly after `busy_until`.
/// A frame captured at the instant the simulator frees up is missed. Empty
/// past the last frame.
std::optional<int> next_processed_frame(int current_index, double busy_until, double fps, int frame_count);

/// Aims at the backprojected box center (plus `prediction` when given); holds
/// the pose when the tracker reported no box.
CameraPose camera_controller(const TrackerOutput& output, const CameraPose& pose,
                             const std::optional<AngularVector>& prediction);

/// Runs the online loop over `seq`. The tracker is initialized on frame 0 with
/// the ground truth seen from a camera aimed at the frame-0 target center.
SimTrace run_simulation(const Sequence& seq, Tracker& tracker, const SimConfig& cfg);

}  // namespace ptzsim
