#include <array>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "ptzsim/trackers.hpp"

namespace ptzsim {
namespace {

constexpr int kBins = 16 * 16 * 16;
constexpr int kMaxIterations = 20;
constexpr double kConvergedShift = 0.5;
constexpr double kFailureSimilarity = 0.1;
constexpr std::array<double, 3> kScales = {1.0, 0.95, 1.05};

using Histogram = std::vector<double>;

int bin_of(const std::uint8_t* px) { return (px[0] >> 4) * 256 + (px[1] >> 4) * 16 + (px[2] >> 4); }

struct Window {
  double cx, cy, w, h;
};

// Visits pixels whose centers fall inside the window's inscribed ellipse;
// `fn(x, y, r2)` receives the normalized squared radius.
template <typename Fn>
void for_each_pixel(const Frame& frame, const Window& win, Fn&& fn) {
  const double hw = win.w / 2.0;
  const double hh = win.h / 2.0;
  if (hw <= 0.0 || hh <= 0.0) return;
  const int x0 = std::max(0, static_cast<int>(std::floor(win.cx - hw)));
  const int x1 = std::min(frame.width - 1, static_cast<int>(std::ceil(win.cx + hw)));
  const int y0 = std::max(0, static_cast<int>(std::floor(win.cy - hh)));
  const int y1 = std::min(frame.height - 1, static_cast<int>(std::ceil(win.cy + hh)));
  for (int y = y0; y <= y1; ++y) {
    const double dy = (y + 0.5 - win.cy) / hh;
    for (int x = x0; x <= x1; ++x) {
      const double dx = (x + 0.5 - win.cx) / hw;
      const double r2 = dx * dx + dy * dy;
      if (r2 <= 1.0) fn(x, y, r2);
    }
  }
}

// Epanechnikov-weighted color histogram, normalized to unit mass. Empty on no support.
bool histogram(const Frame& frame, const Window& win, Histogram& hist) {
  std::fill(hist.begin(), hist.end(), 0.0);
  double total = 0.0;
  for_each_pixel(frame, win, [&](int x, int y, double r2) {
    const double k = 1.0 - r2;
    hist[static_cast<std::size_t>(bin_of(frame.at(x, y)))] += k;
    total += k;
  });
  if (total <= 0.0) return false;
  for (double& v : hist) v /= total;
  return true;
}

double bhattacharyya(const Histogram& p, const Histogram& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return s;
}

// Mean shift on the Bhattacharyya weight image with ASMS-style scale
// selection among a fixed set of relative sizes.
class MeanShiftTracker final : public Tracker {
 public:
  std::string name() const override { return "meanshift"; }

  void init(const Frame& frame, const BoundingBox& box) override {
    detail::require_trackable(frame, box);
    const PlanePoint c = box.center();
    win_ = {c.x, c.y, box.w, box.h};
    model_.assign(kBins, 0.0);
    candidate_.assign(kBins, 0.0);
    initialized_ = histogram(frame, win_, model_);
    if (!initialized_) throw DegenerateBox("init box covers no pixel centers");
  }

  TrackerEstimate update(const Frame& frame) override {
    double best_similarity = -1.0;
    Window best = win_;
    for (double s : kScales) {
      Window w{win_.cx, win_.cy, win_.w * s, win_.h * s};
      const double similarity = converge(frame, w);
      if (similarity > best_similarity) {
        best_similarity = similarity;
        best = w;
      }
    }
    if (best_similarity < kFailureSimilarity) return {std::nullopt, std::max(0.0, best_similarity)};
    win_ = best;
    return {*current_region(), std::min(1.0, best_similarity)};
  }

  std::optional<BoundingBox> current_region() const override {
    if (!initialized_) return std::nullopt;
    return BoundingBox::centered({win_.cx, win_.cy}, win_.w, win_.h);
  }

 private:
  // Runs mean-shift iterations in place; returns the final similarity (0 on no support).
  double converge(const Frame& frame, Window& w) {
    for (int it = 0; it < kMaxIterations; ++it) {
      if (!histogram(frame, w, candidate_)) return 0.0;
      double sx = 0.0;
      double sy = 0.0;
      double sw = 0.0;
      for_each_pixel(frame, w, [&](int x, int y, double) {
        const auto b = static_cast<std::size_t>(bin_of(frame.at(x, y)));
        const double weight = std::sqrt(model_[b] / candidate_[b]);
        sx += weight * (x + 0.5);
        sy += weight * (y + 0.5);
        sw += weight;
      });
      if (sw <= 0.0) break;
      const double nx = sx / sw;
      const double ny = sy / sw;
      const double shift = std::hypot(nx - w.cx, ny - w.cy);
      w.cx = nx;
      w.cy = ny;
      if (shift < kConvergedShift) break;
    }
    if (!histogram(frame, w, candidate_)) return 0.0;
    return bhattacharyya(candidate_, model_);
  }

  Window win_{};
  Histogram model_;
  Histogram candidate_;
  bool initialized_ = false;
};

}  // namespace

std::unique_ptr<Tracker> meanshift_tracker() { return std::make_unique<MeanShiftTracker>(); }

}  // namespace ptzsim
