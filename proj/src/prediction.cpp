#include "ptzsim/prediction.hpp"

#include <cmath>

#include "ptzsim/errors.hpp"

namespace ptzsim {
namespace {

AngularVector velocity(const TrackSample& from, const TrackSample& to) {
  const double dt = to.time - from.time;
  return {wrap_degrees(to.position.pan() - from.position.pan()) / dt, (to.position.tilt() - from.position.tilt()) / dt};
}

}  // namespace

void TrackHistory::push(const SphericalPoint& position, double time) {
  if (!std::isfinite(time)) throw InvalidArgument("sample time must be finite");
  if (!samples_.empty() && !(time > samples_.back().time)) throw InvalidArgument("sample times must increase strictly");
  samples_.push_back({position, time});
  if (samples_.size() > kCapacity) samples_.erase(samples_.begin());
}

MotionEstimate estimate_motion(const TrackHistory& history) {
  const auto& s = history.samples();
  MotionEstimate est;
  if (s.size() < 2) return est;
  est.v0 = velocity(s[0], s[1]);
  est.valid_order = 1;
  est.v1_age = (s[1].time - s[0].time) / 2.0;
  if (s.size() < 3) return est;
  est.v1 = velocity(s[1], s[2]);
  est.valid_order = 2;
  est.v1_age = (s[2].time - s[1].time) / 2.0;
  const double stamp_gap = (s[2].time - s[0].time) / 2.0;
  est.a = (1.0 / stamp_gap) * (est.v1 - est.v0);
  return est;
}

std::string to_string(PredictionModel model) {
  switch (model) {
    case PredictionModel::None:
      return "none";
    case PredictionModel::Model1:
      return "model1";
    case PredictionModel::Model2:
      return "model2";
    case PredictionModel::Model3:
      return "model3";
  }
  return "none";
}

PredictionModel prediction_model_from_string(const std::string& s) {
  if (s == "none") return PredictionModel::None;
  if (s == "model1") return PredictionModel::Model1;
  if (s == "model2") return PredictionModel::Model2;
  if (s == "model3") return PredictionModel::Model3;
  throw InvalidArgument("prediction must be none|model1|model2|model3, got '" + s + "'");
}

bool supports(PredictionModel model, const MotionEstimate& est) {
  switch (model) {
    case PredictionModel::None:
      return true;
    case PredictionModel::Model1:
      return est.valid_order >= 1;
    case PredictionModel::Model2:
    case PredictionModel::Model3:
      return est.valid_order >= 2;
  }
  return false;
}

AngularVector predict_displacement(PredictionModel model, const MotionEstimate& est, double dt) {
  if (!(dt >= 0.0)) throw InvalidArgument("lookahead must be >= 0");
  if (!supports(model, est)) {
    throw InsufficientHistory(to_string(model) + " needs " + (model == PredictionModel::Model1 ? "1" : "2") +
                              " velocities, have " + std::to_string(est.valid_order));
  }
  switch (model) {
    case PredictionModel::None:
      return {};
    case PredictionModel::Model1:
      return dt * est.latest_velocity();
    case PredictionModel::Model2:
      return dt * (0.5 * (est.v1 + est.v0));
    case PredictionModel::Model3: {
      const AngularVector v_now = est.v1 + est.v1_age * est.a;
      return (dt * dt / 2.0) * est.a + dt * v_now;
    }
  }
  return {};
}

double lookahead_interval(double last_processing_cost, double camera_move_time) {
  if (!(last_processing_cost >= 0.0) || !(camera_move_time >= 0.0)) throw InvalidArgument("lookahead inputs must be >= 0");
  return last_processing_cost + camera_move_time;
}

}  // namespace ptzsim
