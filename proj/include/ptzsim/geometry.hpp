#pragma once

#include <optional>

#include "ptzsim/frame.hpp"

namespace ptzsim {

/// Direction on the view sphere in degrees. Pan is kept in [-180, 180),
/// tilt must lie in [-90, 90].
class SphericalPoint {
 public:
  SphericalPoint() = default;
  SphericalPoint(double pan, double tilt);

  double pan() const { return pan_; }
  double tilt() const { return tilt_; }

  friend bool operator==(const SphericalPoint&, const SphericalPoint&) = default;

 private:
  double pan_ = 0.0;
  double tilt_ = 0.0;
};

/// Wraps an angle into [-180, 180).
double wrap_degrees(double deg);

/// Pinhole PTZ camera: aim direction, horizontal field of view and image size.
/// The image center (width/2, height/2) looks along `aim`.
struct CameraPose {
  SphericalPoint aim;
  double hfov = 60.0;
  int image_width = 320;
  int image_height = 240;

  CameraPose() = default;
  CameraPose(SphericalPoint aim_, double hfov_, int width, int height);

  double vfov() const;
  /// Focal length in pixels (square pixels).
  double focal_px() const;
  double cx() const { return image_width / 2.0; }
  double cy() const { return image_height / 2.0; }

  friend bool operator==(const CameraPose&, const CameraPose&) = default;
};

/// Real-valued pixel coordinates, origin at the top-left image corner.
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// Projects `p` into the image of `pose`. Empty when the direction is behind
/// the camera or outside the frustum [0, width] x [0, height].
std::optional<PlanePoint> project_sphere_to_image(const SphericalPoint& p, const CameraPose& pose);

/// Same projection without the frustum test; empty only when behind the camera.
std::optional<PlanePoint> project_unclipped(const SphericalPoint& p, const CameraPose& pose);

SphericalPoint backproject_image_to_sphere(const PlanePoint& q, const CameraPose& pose);

/// Great-circle angle in degrees, in [0, 180].
double angular_distance(const SphericalPoint& a, const SphericalPoint& b);

/// Renders the perspective view of an equirectangular (2:1) panorama with
/// bilinear sampling. Throws MalformedPanorama on a bad aspect ratio.
Frame render_view(const Frame& panorama, const CameraPose& pose);

/// Equirectangular pixel coordinates (continuous, pixel centers at +0.5) of a direction.
PlanePoint equirect_coords(const SphericalPoint& p, int pano_width, int pano_height);

}  // namespace ptzsim
