#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptzsim/box.hpp"
#include "ptzsim/frame.hpp"

namespace ptzsim {

/// What a tracker reports for one frame. An empty box means tracking failed.
struct TrackerEstimate {
  std::optional<BoundingBox> box;
  std::optional<double> confidence;
};

struct TrackerOutput {
  std::optional<BoundingBox> box;
  std::optional<double> confidence;
  double processing_cost = 0.0;  // seconds
};

/// How processing cost is obtained: wall-clock around update(), or a fixed
/// declared value so runs are machine independent.
struct TimingMode {
  bool measured = false;
  double declared_cost = 0.0;

  static TimingMode Measured() { return {true, 0.0}; }
  static TimingMode Declared(double seconds);

  /// "measured" or "declared:<seconds>".
  static TimingMode parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const TimingMode&, const TimingMode&) = default;
};

struct TrackerDescriptor {
  std::string name;
  TimingMode timing;
};

/// Single-target tracker: init on the first frame, then update per processed frame.
class Tracker {
 public:
  virtual ~Tracker() = default;

  virtual std::string name() const = 0;

  /// Builds the appearance model. Throws DegenerateBox when the box has zero
  /// area or does not intersect the frame.
  virtual void init(const Frame& frame, const BoundingBox& box) = 0;

  virtual TrackerEstimate update(const Frame& frame) = 0;

  /// Region currently believed to hold the target.
  virtual std::optional<BoundingBox> current_region() const = 0;
};

/// Implemented by harness-validation trackers that are handed the ground
/// truth of the frame they are about to process.
class GroundTruthConsumer {
 public:
  virtual ~GroundTruthConsumer() = default;
  virtual void observe_ground_truth(const std::optional<BoundingBox>& box) = 0;
};

/// Runs tracker.update and fills processing_cost according to `timing`.
TrackerOutput timed_update(Tracker& tracker, const Frame& frame, const TimingMode& timing);

/// Template matching against a fixed grayscale template.
std::unique_ptr<Tracker> ncc_tracker();
/// Color-histogram mean shift with scale adaptation.
std::unique_ptr<Tracker> meanshift_tracker();
/// Adaptive correlation filter on grayscale intensities.
std::unique_ptr<Tracker> mosse_tracker();
/// Test-only: reports the ground truth it is fed.
std::unique_ptr<Tracker> oracle_tracker();
/// Test-only: reports the init box forever.
std::unique_ptr<Tracker> stationary_tracker();

/// Registry lookup: ncc, meanshift, mosse, oracle, stationary.
std::unique_ptr<Tracker> make_tracker(std::string_view name);
std::vector<std::string> tracker_names();

}  // namespace ptzsim
