#include "ptzsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptzsim/errors.hpp"

namespace ptzsim {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kFrustumSlack = 1e-9;

struct Vec3 {
  double x, y, z;
};

Vec3 unit_vector(const SphericalPoint& p) {
  const double t = p.tilt() * kDeg;
  const double a = p.pan() * kDeg;
  return {std::cos(t) * std::sin(a), std::sin(t), std::cos(t) * std::cos(a)};
}

// Direction of `p` in the camera frame: x right, y up, z along the optical axis.
// Undo the pan first, then the tilt, so that p == aim maps to (0, 0, 1) exactly.
Vec3 to_camera(const SphericalPoint& p, const SphericalPoint& aim) {
  const double t = p.tilt() * kDeg;
  const double dp = (p.pan() - aim.pan()) * kDeg;
  const double x = std::cos(t) * std::sin(dp);
  const double y = std::sin(t);
  const double z = std::cos(t) * std::cos(dp);
  const double a = aim.tilt() * kDeg;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  return {x, y * ca - z * sa, y * sa + z * ca};
}

}  // namespace

double wrap_degrees(double deg) {
  double r = std::fmod(deg + 180.0, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r - 180.0;
}

SphericalPoint::SphericalPoint(double pan, double tilt) {
  if (!std::isfinite(pan)) throw InvalidArgument("pan must be finite");
  if (!(tilt >= -90.0 && tilt <= 90.0)) throw InvalidArgument("tilt outside [-90, 90]: " + std::to_string(tilt));
  pan_ = wrap_degrees(pan);
  tilt_ = tilt;
}

CameraPose::CameraPose(SphericalPoint aim_, double hfov_, int width, int height)
    : aim(aim_), hfov(hfov_), image_width(width), image_height(height) {
  if (!(hfov > 0.0 && hfov < 180.0)) throw InvalidArgument("hfov must lie in (0, 180)");
  if (width <= 0 || height <= 0) throw InvalidArgument("image dimensions must be positive");
}

double CameraPose::focal_px() const { return cx() / std::tan(hfov * kDeg / 2.0); }

double CameraPose::vfov() const {
  return 2.0 * std::atan(std::tan(hfov * kDeg / 2.0) * image_height / image_width) / kDeg;
}

std::optional<PlanePoint> project_unclipped(const SphericalPoint& p, const CameraPose& pose) {
  const Vec3 c = to_camera(p, pose.aim);
  if (c.z <= 0.0) return std::nullopt;
  const double f = pose.focal_px();
  return PlanePoint{pose.cx() + f * c.x / c.z, pose.cy() - f * c.y / c.z};
}

std::optional<PlanePoint> project_sphere_to_image(const SphericalPoint& p, const CameraPose& pose) {
  auto q = project_unclipped(p, pose);
  if (!q) return q;
  if (q->x < -kFrustumSlack || q->x > pose.image_width + kFrustumSlack || q->y < -kFrustumSlack ||
      q->y > pose.image_height + kFrustumSlack) {
    return std::nullopt;
  }
  return q;
}

SphericalPoint backproject_image_to_sphere(const PlanePoint& q, const CameraPose& pose) {
  const double f = pose.focal_px();
  const double cx = (q.x - pose.cx()) / f;
  const double cy = -(q.y - pose.cy()) / f;
  const double a = pose.aim.tilt() * kDeg;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double y = cy * ca + sa;
  const double z = -cy * sa + ca;
  const double pan = pose.aim.pan() + std::atan2(cx, z) / kDeg;
  const double tilt = std::atan2(y, std::hypot(cx, z)) / kDeg;
  return {pan, std::clamp(tilt, -90.0, 90.0)};
}

double angular_distance(const SphericalPoint& a, const SphericalPoint& b) {
  const Vec3 u = unit_vector(a);
  const Vec3 v = unit_vector(b);
  const Vec3 c{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
  const double cross = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
  const double dot = u.x * v.x + u.y * v.y + u.z * v.z;
  return std::atan2(cross, dot) / kDeg;
}

PlanePoint equirect_coords(const SphericalPoint& p, int pano_width, int pano_height) {
  return {(p.pan() + 180.0) / 360.0 * pano_width, (90.0 - p.tilt()) / 180.0 * pano_height};
}

Frame render_view(const Frame& panorama, const CameraPose& pose) {
  if (!panorama.valid() || panorama.width != 2 * panorama.height) {
    throw MalformedPanorama("panorama must be a 2:1 equirectangular image, got " +
                            std::to_string(panorama.width) + "x" + std::to_string(panorama.height));
  }
  const int pw = panorama.width;
  const int ph = panorama.height;
  Frame out(pose.image_width, pose.image_height, panorama.timestamp);

  for (int j = 0; j < pose.image_height; ++j) {
    for (int i = 0; i < pose.image_width; ++i) {
      const SphericalPoint dir = backproject_image_to_sphere({i + 0.5, j + 0.5}, pose);
      const PlanePoint e = equirect_coords(dir, pw, ph);
      const double u = e.x - 0.5;
      const double v = std::clamp(e.y - 0.5, 0.0, static_cast<double>(ph - 1));
      const double fu = std::floor(u);
      const double fv = std::floor(v);
      const double wx = u - fu;
      const double wy = v - fv;
      const int x0 = ((static_cast<int>(fu) % pw) + pw) % pw;
      const int x1 = (x0 + 1) % pw;
      const int y0 = static_cast<int>(fv);
      const int y1 = std::min(y0 + 1, ph - 1);
      const std::uint8_t* p00 = panorama.at(x0, y0);
      const std::uint8_t* p10 = panorama.at(x1, y0);
      const std::uint8_t* p01 = panorama.at(x0, y1);
      const std::uint8_t* p11 = panorama.at(x1, y1);
      std::uint8_t* dst = out.at(i, j);
      for (int c = 0; c < 3; ++c) {
        const double top = p00[c] + wx * (p10[c] - p00[c]);
        const double bottom = p01[c] + wx * (p11[c] - p01[c]);
        dst[c] = static_cast<std::uint8_t>(std::lround(top + wy * (bottom - top)));
      }
    }
  }
  return out;
}

}  // namespace ptzsim
