#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptzsim/box.hpp"
#include "ptzsim/geometry.hpp"

namespace ptzsim {

/// Metric sample for one processed frame. Empty optionals are the invalid
/// (-1) values: TPE and BOR need both a visible target and a tracker box,
/// TPO needs only a visible target.
struct FrameRecord {
  int frame_index = 0;
  double timestamp = 0.0;
  std::optional<double> tpe;
  std::optional<double> bor;
  std::optional<double> tpo;
  int tf = 1;
  PlanePoint fov_center;
  std::optional<PlanePoint> gt_center;
  std::optional<PlanePoint> pt_center;
  std::optional<BoundingBox> gt_box;
  std::optional<BoundingBox> pt_box;
  SphericalPoint aim;  // camera aim the frame was rendered at

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct SequenceResult {
  std::optional<double> tpe;
  std::optional<double> tpo;
  std::optional<double> bor;
  double tf = 1.0;
  double pr = 0.0;
  double score = 0.0;
  int processed = 0;
  int total = 0;
  int valid = 0;  // frames with a valid TPE
  /// True when no frame was valid and the score was computed with BOR = 0.
  bool degenerate = false;
};

double tpe(const PlanePoint& c_gt, const PlanePoint& c_pt);
/// Intersection over union; 0 when the union is empty.
double bor(const BoundingBox& a_gt, const BoundingBox& a_pt);
double tpo(const PlanePoint& c_fov, const PlanePoint& c_gt);
int tf_flag(bool tpe_valid);
/// Distance from (BOR, TF) to the ideal tracker at (1, 0).
double score(double bor, double tf);

/// Builds the record for one frame from the ground-truth and tracker boxes in
/// the image plane of `pose`.
FrameRecord evaluate_frame(int frame_index, double timestamp, const CameraPose& pose,
                           const std::optional<BoundingBox>& gt, const std::optional<BoundingBox>& pt);

/// Means over valid frames, TF over processed frames, PR = |records| / total.
/// Throws EmptyTrace on no records.
SequenceResult aggregate(std::span<const FrameRecord> records, int total_frames);

struct NamedResult {
  std::string name;
  SequenceResult result;
};

/// Ascending by score, then TF, then name.
std::vector<NamedResult> rank(std::vector<NamedResult> results);

struct ScatterPoint {
  std::string name;
  double bor = 0.0;
  double tf = 0.0;
  friend bool operator==(const ScatterPoint&, const ScatterPoint&) = default;
};

/// One (BOR, TF) point per result, input order preserved. Invalid BOR plots as 0.
std::vector<ScatterPoint> scatter_points(std::span<const NamedResult> results);

}  // namespace ptzsim
