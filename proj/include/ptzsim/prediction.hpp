#pragma once

#include <string>
#include <vector>

#include "ptzsim/geometry.hpp"

namespace ptzsim {

/// Per-axis angular quantity (deg, deg/s or deg/s^2 depending on use).
struct AngularVector {
  double pan = 0.0;
  double tilt = 0.0;

  friend AngularVector operator+(AngularVector a, AngularVector b) { return {a.pan + b.pan, a.tilt + b.tilt}; }
  friend AngularVector operator-(AngularVector a, AngularVector b) { return {a.pan - b.pan, a.tilt - b.tilt}; }
  friend AngularVector operator*(double s, AngularVector a) { return {s * a.pan, s * a.tilt}; }
  friend bool operator==(const AngularVector&, const AngularVector&) = default;
};

struct TrackSample {
  SphericalPoint position;
  double time = 0.0;
};

/// The last three observed target positions, oldest first.
class TrackHistory {
 public:
  static constexpr std::size_t kCapacity = 3;

  /// Appends a sample, dropping the oldest beyond capacity. Times must increase strictly.
  void push(const SphericalPoint& position, double time);
  const std::vector<TrackSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

 private:
  std::vector<TrackSample> samples_;
};

/// Finite-difference velocities and acceleration from a TrackHistory.
///
/// valid_order counts the defined velocities: 0 (one sample), 1 (v0 only) or
/// 2 (v0, v1 and a). Each velocity is a chord over one sample interval and is
/// attributed to that interval's midpoint; `a` divides by the spacing of those
/// midpoints, which equals t1 - t0 for evenly spaced samples. `v1_age` is the
/// time from the midpoint of the latest velocity to the latest sample.
struct MotionEstimate {
  AngularVector v0;
  AngularVector v1;
  AngularVector a;
  int valid_order = 0;
  double v1_age = 0.0;

  /// V1 when defined, otherwise the single available velocity.
  AngularVector latest_velocity() const { return valid_order >= 2 ? v1 : v0; }
};

MotionEstimate estimate_motion(const TrackHistory& history);

enum class PredictionModel { None, Model1, Model2, Model3 };

std::string to_string(PredictionModel model);
PredictionModel prediction_model_from_string(const std::string& s);

/// True when `est` carries enough velocities for `model`.
bool supports(PredictionModel model, const MotionEstimate& est);

/// Target displacement over `dt` seconds:
///   model 1: V1 dt
///   model 2: (V0 + V1) / 2 dt
///   model 3: A dt^2 / 2 + V1 dt, with V1 carried forward to the latest sample
/// Throws InsufficientHistory when the estimate lacks the needed velocities.
AngularVector predict_displacement(PredictionModel model, const MotionEstimate& est, double dt);

/// Prediction horizon: processing time of the current frame plus camera travel time.
double lookahead_interval(double last_processing_cost, double camera_move_time);

}  // namespace ptzsim
