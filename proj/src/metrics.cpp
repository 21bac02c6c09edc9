#include "ptzsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ptzsim/errors.hpp"

namespace ptzsim {

double tpe(const PlanePoint& c_gt, const PlanePoint& c_pt) { return std::hypot(c_gt.x - c_pt.x, c_gt.y - c_pt.y); }

double tpo(const PlanePoint& c_fov, const PlanePoint& c_gt) { return std::hypot(c_fov.x - c_gt.x, c_fov.y - c_gt.y); }

double bor(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double ih = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

int tf_flag(bool tpe_valid) { return tpe_valid ? 0 : 1; }

double score(double bor, double tf) { return std::hypot(1.0 - bor, tf); }

FrameRecord evaluate_frame(int frame_index, double timestamp, const CameraPose& pose,
                           const std::optional<BoundingBox>& gt, const std::optional<BoundingBox>& pt) {
  FrameRecord r;
  r.frame_index = frame_index;
  r.timestamp = timestamp;
  r.fov_center = {pose.cx(), pose.cy()};
  r.aim = pose.aim;
  r.gt_box = gt;
  r.pt_box = pt;
  if (gt) r.gt_center = gt->center();
  if (pt) r.pt_center = pt->center();
  if (gt) r.tpo = tpo(r.fov_center, *r.gt_center);
  if (gt && pt) {
    r.tpe = tpe(*r.gt_center, *r.pt_center);
    r.bor = bor(*gt, *pt);
  }
  r.tf = tf_flag(r.tpe.has_value());
  return r;
}

SequenceResult aggregate(std::span<const FrameRecord> records, int total_frames) {
  if (records.empty()) throw EmptyTrace("no processed frames to aggregate");
  if (total_frames < static_cast<int>(records.size())) {
    throw InvalidArgument("total frame count smaller than processed frame count");
  }
  double tpe_sum = 0.0;
  double tpo_sum = 0.0;
  double bor_sum = 0.0;
  int tpe_n = 0;
  int tpo_n = 0;
  int bor_n = 0;
  int tf_sum = 0;
  for (const auto& r : records) {
    if (r.tpe) tpe_sum += *r.tpe, ++tpe_n;
    if (r.tpo) tpo_sum += *r.tpo, ++tpo_n;
    if (r.bor) bor_sum += *r.bor, ++bor_n;
    tf_sum += r.tf;
  }
  SequenceResult s;
  if (tpe_n > 0) s.tpe = tpe_sum / tpe_n;
  if (tpo_n > 0) s.tpo = tpo_sum / tpo_n;
  if (bor_n > 0) s.bor = bor_sum / bor_n;
  s.processed = static_cast<int>(records.size());
  s.total = total_frames;
  s.valid = tpe_n;
  s.tf = static_cast<double>(tf_sum) / s.processed;
  s.pr = static_cast<double>(s.processed) / total_frames;
  s.degenerate = !s.bor.has_value();
  s.score = score(s.bor.value_or(0.0), s.tf);
  return s;
}

std::vector<NamedResult> rank(std::vector<NamedResult> results) {
  std::stable_sort(results.begin(), results.end(), [](const NamedResult& a, const NamedResult& b) {
    if (a.result.score != b.result.score) return a.result.score < b.result.score;
    if (a.result.tf != b.result.tf) return a.result.tf < b.result.tf;
    return a.name < b.name;
  });
  return results;
}

std::vector<ScatterPoint> scatter_points(std::span<const NamedResult> results) {
  std::vector<ScatterPoint> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back({r.name, r.result.bor.value_or(0.0), r.result.tf});
  return out;
}

}  // namespace ptzsim
