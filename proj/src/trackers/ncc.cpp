#include <cmath>
#include <vector>

#include "common.hpp"
#include "ptzsim/trackers.hpp"

namespace ptzsim {
namespace {

constexpr double kFailurePeak = 0.2;
constexpr double kMinStd = 1e-6;

// Static grayscale template located by exhaustive normalized cross-correlation
// inside a window twice the box size around the last position.
class NccTracker final : public Tracker {
 public:
  std::string name() const override { return "ncc"; }

  void init(const Frame& frame, const BoundingBox& box) override {
    detail::require_trackable(frame, box);
    const GrayImage gray = to_gray(frame);
    rect_ = detail::clip_to_image(box, frame.width, frame.height);
    offset_x_ = box.x - rect_.x;
    offset_y_ = box.y - rect_.y;
    box_w_ = box.w;
    box_h_ = box.h;

    templ_.assign(static_cast<std::size_t>(rect_.w) * rect_.h, 0.0);
    double mean = 0.0;
    for (int y = 0; y < rect_.h; ++y)
      for (int x = 0; x < rect_.w; ++x) mean += gray.at(rect_.x + x, rect_.y + y);
    mean /= static_cast<double>(templ_.size());
    double energy = 0.0;
    for (int y = 0; y < rect_.h; ++y) {
      for (int x = 0; x < rect_.w; ++x) {
        const double v = gray.at(rect_.x + x, rect_.y + y) - mean;
        templ_[static_cast<std::size_t>(y) * rect_.w + x] = v;
        energy += v * v;
      }
    }
    templ_norm_ = std::sqrt(energy);
    flat_template_ = templ_norm_ < kMinStd * std::sqrt(static_cast<double>(templ_.size()));
  }

  TrackerEstimate update(const Frame& frame) override {
    if (flat_template_) return {std::nullopt, 0.0};
    const GrayImage gray = to_gray(frame);
    const int rx = (rect_.w + 1) / 2;
    const int ry = (rect_.h + 1) / 2;
    const double n = static_cast<double>(templ_.size());

    double best = -2.0;
    int best_x = rect_.x;
    int best_y = rect_.y;
    for (int dy = -ry; dy <= ry; ++dy) {
      const int y0 = rect_.y + dy;
      if (y0 < 0 || y0 + rect_.h > gray.height) continue;
      for (int dx = -rx; dx <= rx; ++dx) {
        const int x0 = rect_.x + dx;
        if (x0 < 0 || x0 + rect_.w > gray.width) continue;
        double sum = 0.0;
        double sum_sq = 0.0;
        double cross = 0.0;
        for (int y = 0; y < rect_.h; ++y) {
          const float* row = &gray.data[static_cast<std::size_t>(y0 + y) * gray.width + x0];
          const double* t = &templ_[static_cast<std::size_t>(y) * rect_.w];
          for (int x = 0; x < rect_.w; ++x) {
            const double v = row[x];
            sum += v;
            sum_sq += v * v;
            cross += t[x] * v;
          }
        }
        const double var = sum_sq - sum * sum / n;
        if (var <= kMinStd * kMinStd * n) continue;
        const double score = cross / (templ_norm_ * std::sqrt(var));
        if (score > best) {
          best = score;
          best_x = x0;
          best_y = y0;
        }
      }
    }
    if (best < -1.5) return {std::nullopt, 0.0};
    const double confidence = std::clamp(best, 0.0, 1.0);
    if (best < kFailurePeak) return {std::nullopt, confidence};
    rect_.x = best_x;
    rect_.y = best_y;
    return {*current_region(), confidence};
  }

  std::optional<BoundingBox> current_region() const override {
    if (templ_.empty()) return std::nullopt;
    return BoundingBox{rect_.x + offset_x_, rect_.y + offset_y_, box_w_, box_h_};
  }

 private:
  detail::PixelRect rect_;
  double offset_x_ = 0.0;
  double offset_y_ = 0.0;
  double box_w_ = 0.0;
  double box_h_ = 0.0;
  std::vector<double> templ_;
  double templ_norm_ = 0.0;
  bool flat_template_ = false;
};

}  // namespace

std::unique_ptr<Tracker> ncc_tracker() { return std::make_unique<NccTracker>(); }

}  // namespace ptzsim
