#include <chrono>
#include <charconv>
#include <cmath>

#include "common.hpp"
#include "ptzsim/trackers.hpp"

namespace ptzsim {
namespace {

class OracleTracker final : public Tracker, public GroundTruthConsumer {
 public:
  std::string name() const override { return "oracle"; }

  void init(const Frame& frame, const BoundingBox& box) override {
    detail::require_trackable(frame, box);
    region_ = box;
  }

  void observe_ground_truth(const std::optional<BoundingBox>& box) override { truth_ = box; }

  TrackerEstimate update(const Frame&) override {
    if (!truth_) return {std::nullopt, 0.0};
    region_ = *truth_;
    return {region_, 1.0};
  }

  std::optional<BoundingBox> current_region() const override { return region_; }

 private:
  std::optional<BoundingBox> region_;
  std::optional<BoundingBox> truth_;
};

class StationaryTracker final : public Tracker {
 public:
  std::string name() const override { return "stationary"; }

  void init(const Frame& frame, const BoundingBox& box) override {
    detail::require_trackable(frame, box);
    region_ = box;
  }

  TrackerEstimate update(const Frame&) override { return {region_, 1.0}; }

  std::optional<BoundingBox> current_region() const override { return region_; }

 private:
  std::optional<BoundingBox> region_;
};

}  // namespace

TimingMode TimingMode::Declared(double seconds) {
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) throw InvalidArgument("declared cost must be finite and >= 0");
  return {false, seconds};
}

TimingMode TimingMode::parse(const std::string& text) {
  if (text == "measured") return Measured();
  constexpr std::string_view prefix = "declared:";
  if (text.starts_with(prefix)) {
    double v = 0.0;
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && ptr == last) return Declared(v);
  }
  throw InvalidArgument("timing must be 'measured' or 'declared:<seconds>', got '" + text + "'");
}

std::string TimingMode::to_string() const {
  if (measured) return "measured";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), declared_cost);
  return "declared:" + std::string(buf, end);
}

TrackerOutput timed_update(Tracker& tracker, const Frame& frame, const TimingMode& timing) {
  TrackerOutput out;
  if (timing.measured) {
    const auto start = std::chrono::steady_clock::now();
    TrackerEstimate e = tracker.update(frame);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.box = e.box;
    out.confidence = e.confidence;
    out.processing_cost = std::max(elapsed.count(), 1e-9);
  } else {
    TrackerEstimate e = tracker.update(frame);
    out.box = e.box;
    out.confidence = e.confidence;
    out.processing_cost = timing.declared_cost;
  }
  return out;
}

std::unique_ptr<Tracker> oracle_tracker() { return std::make_unique<OracleTracker>(); }
std::unique_ptr<Tracker> stationary_tracker() { return std::make_unique<StationaryTracker>(); }

std::unique_ptr<Tracker> make_tracker(std::string_view name) {
  if (name == "ncc") return ncc_tracker();
  if (name == "meanshift") return meanshift_tracker();
  if (name == "mosse") return mosse_tracker();
  if (name == "oracle") return oracle_tracker();
  if (name == "stationary") return stationary_tracker();
  throw InvalidArgument("unknown tracker '" + std::string(name) + "'");
}

std::vector<std::string> tracker_names() { return {"ncc", "meanshift", "mosse", "oracle", "stationary"}; }

}  // namespace ptzsim
