#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ptzsim/box.hpp"
#include "ptzsim/frame.hpp"
#include "ptzsim/geometry.hpp"

namespace ptzsim {

/// Target annotation on the view sphere. Absent entries carry no geometry.
struct GroundTruthEntry {
  int frame_index = 0;
  SphericalPoint center;
  double angular_width = 0.0;
  double angular_height = 0.0;
  bool present = true;

  static GroundTruthEntry absent(int frame_index) { return {frame_index, {}, 0.0, 0.0, false}; }

  friend bool operator==(const GroundTruthEntry&, const GroundTruthEntry&) = default;
};

/// Lazily materialized equirectangular panorama.
class FrameSource {
 public:
  explicit FrameSource(std::function<Frame()> loader) : loader_(std::move(loader)) {}
  Frame load() const { return loader_(); }

 private:
  std::function<Frame()> loader_;
};

struct Sequence {
  std::string name;
  double fps = 30.0;
  std::vector<FrameSource> frames;
  std::vector<GroundTruthEntry> ground_truth;  // sorted by frame_index
  GroundTruthEntry initial_box;

  int frame_count() const { return static_cast<int>(frames.size()); }
  double timestamp(int index) const { return index / fps; }
  /// Panorama for `index`, stamped with index / fps.
  Frame panorama(int index) const;
  std::optional<GroundTruthEntry> ground_truth_at(int index) const;
};

/// Reads `frames/%06d.png`, `groundtruth.txt` and `meta.json` from `root`.
Sequence load_sequence(const std::filesystem::path& root);

/// Writes `seq` in the layout read by load_sequence.
void write_sequence(const Sequence& seq, const std::filesystem::path& root);

/// Projects an annotation into the current view. Empty when the target center
/// is outside the frustum. The box is centered on the projected center and
/// spans the projected angular corners.
std::optional<BoundingBox> ground_truth_in_view(const GroundTruthEntry& entry, const CameraPose& pose);

enum class MotionLaw { Static, ConstantVelocity, ConstantAcceleration };

/// Deterministic synthetic sequence description. Velocities in deg/s,
/// accelerations in deg/s^2, sizes in degrees.
struct SyntheticSpec {
  std::string name = "synthetic";
  double duration = 4.0;
  double fps = 30.0;
  std::uint32_t seed = 1;
  int panorama_width = 1440;
  SphericalPoint start;
  double target_width = 8.0;
  double target_height = 8.0;
  MotionLaw law = MotionLaw::Static;
  double velocity_pan = 0.0;
  double velocity_tilt = 0.0;
  double accel_pan = 0.0;
  double accel_tilt = 0.0;
  /// Multiplicative target size change applied per frame.
  double growth_per_frame = 1.0;

  int frame_count() const;
  /// Exact target center at time t under the motion law.
  SphericalPoint position_at(double t) const;
};

Sequence generate_synthetic_sequence(const SyntheticSpec& spec);

std::string to_string(MotionLaw law);
MotionLaw motion_law_from_string(const std::string& s);

}  // namespace ptzsim
