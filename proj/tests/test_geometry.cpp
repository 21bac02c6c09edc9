#include <doctest.h>

#include <cmath>
#include <random>

#include "ptzsim/errors.hpp"
#include "ptzsim/geometry.hpp"
#include "support/oracles.hpp"

using namespace ptzsim;

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

CameraPose pose_at(double pan, double tilt, double hfov = 90.0, int w = 800, int h = 600) {
  return CameraPose({pan, tilt}, hfov, w, h);
}

// Panorama with a white angular square of `size` degrees at `center` on black.
Frame square_panorama(int width, SphericalPoint center, double size) {
  Frame pano(width, width / 2);
  for (int y = 0; y < pano.height; ++y) {
    const double tilt = 90.0 - (y + 0.5) * 180.0 / pano.height;
    for (int x = 0; x < pano.width; ++x) {
      const double pan = (x + 0.5) * 360.0 / pano.width - 180.0;
      if (std::abs(wrap_degrees(pan - center.pan())) <= size / 2 && std::abs(tilt - center.tilt()) <= size / 2) {
        std::uint8_t* p = pano.at(x, y);
        p[0] = p[1] = p[2] = 255;
      }
    }
  }
  return pano;
}

}  // namespace

TEST_CASE("spherical point normalizes pan and rejects bad tilt") {
  CHECK(SphericalPoint(190, 0).pan() == doctest::Approx(-170));
  CHECK(SphericalPoint(180, 0).pan() == doctest::Approx(-180));
  CHECK(SphericalPoint(-180, 0).pan() == doctest::Approx(-180));
  CHECK(SphericalPoint(-540, 10).pan() == doctest::Approx(-180));
  CHECK_THROWS_AS(SphericalPoint(0, 91), InvalidArgument);
  CHECK_THROWS_AS(SphericalPoint(0, std::nan("")), InvalidArgument);
  CHECK_NOTHROW(SphericalPoint(0, -90));
}

TEST_CASE("camera pose validation") {
  CHECK_THROWS_AS(CameraPose({0, 0}, 0.0, 10, 10), InvalidArgument);
  CHECK_THROWS_AS(CameraPose({0, 0}, 180.0, 10, 10), InvalidArgument);
  CHECK_THROWS_AS(CameraPose({0, 0}, 60.0, 0, 10), InvalidArgument);
  const CameraPose p = pose_at(0, 0, 90, 800, 800);
  CHECK(p.vfov() == doctest::Approx(90.0));
  CHECK(pose_at(0, 0, 90, 800, 600).vfov() == doctest::Approx(2 * std::atan(0.75) / kDeg));
}

TEST_CASE("project_sphere_to_image examples") {
  const CameraPose pose = pose_at(0, 0);
  auto c = project_sphere_to_image({0, 0}, pose);
  REQUIRE(c);
  CHECK(c->x == 400.0);
  CHECK(c->y == 300.0);

  auto edge = project_sphere_to_image({45, 0}, pose);
  REQUIRE(edge);
  CHECK(edge->x == doctest::Approx(800.0).epsilon(1e-12));
  CHECK(edge->y == doctest::Approx(300.0));

  CHECK_FALSE(project_sphere_to_image({120, 0}, pose));
  CHECK_FALSE(project_sphere_to_image({180, 0}, pose));
  // Up is toward smaller y.
  auto up = project_sphere_to_image({0, 10}, pose);
  REQUIRE(up);
  CHECK(up->y < 300.0);
}

TEST_CASE("backproject_image_to_sphere examples") {
  auto a = backproject_image_to_sphere({400, 300}, pose_at(10, 5));
  CHECK(a.pan() == doctest::Approx(10.0));
  CHECK(a.tilt() == doctest::Approx(5.0));
  auto b = backproject_image_to_sphere({800, 300}, pose_at(0, 0));
  CHECK(b.pan() == doctest::Approx(45.0));
  CHECK(b.tilt() == doctest::Approx(0.0));
}

TEST_CASE("projection round trip and aim-to-center over random poses") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pan(-180, 180), tilt(-80, 80), fov(10, 150), unit(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const CameraPose pose({pan(rng), tilt(rng)}, fov(rng), 640, 480);
    const auto center = project_sphere_to_image(pose.aim, pose);
    REQUIRE(center);
    CHECK(center->x == pose.cx());
    CHECK(center->y == pose.cy());

    const PlanePoint q{unit(rng) * 640, unit(rng) * 480};
    const SphericalPoint p = backproject_image_to_sphere(q, pose);
    const auto back = project_sphere_to_image(p, pose);
    REQUIRE(back);
    CHECK(std::hypot(back->x - q.x, back->y - q.y) < 1e-6);
    const SphericalPoint again = backproject_image_to_sphere(*back, pose);
    CHECK(angular_distance(again, p) < 1e-6);
  }
}

TEST_CASE("angular_distance examples and metric axioms") {
  CHECK(angular_distance({0, 0}, {90, 0}) == doctest::Approx(90));
  CHECK(angular_distance({0, 45}, {0, -45}) == doctest::Approx(90));
  CHECK(angular_distance({12, 34}, {12, 34}) == 0.0);
  CHECK(angular_distance({179, 0}, {-179, 0}) == doctest::Approx(2));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pan(-180, 180), tilt(-90, 90);
  for (int i = 0; i < 500; ++i) {
    const SphericalPoint a(pan(rng), tilt(rng)), b(pan(rng), tilt(rng)), c(pan(rng), tilt(rng));
    const double ab = angular_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 180.0);
    CHECK(ab == doctest::Approx(angular_distance(b, a)).epsilon(1e-12));
    CHECK(angular_distance(a, c) <= ab + angular_distance(b, c) + 1e-9);
  }
}

TEST_CASE("render_view rejects a non 2:1 panorama") {
  CHECK_THROWS_AS(render_view(Frame(100, 100), pose_at(0, 0)), MalformedPanorama);
}

TEST_CASE("render_view of a uniform panorama is uniform") {
  const Frame pano = test::uniform(360, 180, 128, 128, 128);
  const Frame view = render_view(pano, pose_at(33, -71, 70, 64, 48));
  for (auto v : view.pixels) REQUIRE(v == 128);
}

TEST_CASE("render_view center pixel samples the aim direction") {
  const Frame pano = test::random_blocks(720, 360, 5, 1);
  for (auto [p, t] : {std::pair{0.0, 0.0}, {30.25, 10.25}, {-100.125, -45.0}}) {
    // An odd-sized view puts a pixel center exactly on the optical axis.
    const CameraPose pose({p, t}, 60, 41, 41);
    const Frame view = render_view(pano, pose);
    const PlanePoint e = equirect_coords(pose.aim, 720, 360);
    // Bilinear oracle at the equirect coordinates of the aim.
    const double u = e.x - 0.5, v = e.y - 0.5;
    const int x0 = static_cast<int>(std::floor(u)), y0 = static_cast<int>(std::floor(v));
    const double fx = u - x0, fy = v - y0;
    for (int c = 0; c < 3; ++c) {
      const double s = (1 - fx) * (1 - fy) * pano.at(x0, y0)[c] + fx * (1 - fy) * pano.at(x0 + 1, y0)[c] +
                       (1 - fx) * fy * pano.at(x0, y0 + 1)[c] + fx * fy * pano.at(x0 + 1, y0 + 1)[c];
      CHECK(std::abs(view.at(20, 20)[c] - s) <= 1.0);
    }
  }
}

TEST_CASE("render_view square width follows the pinhole model") {
  const Frame pano = square_panorama(3600, {30, 0}, 10.0);
  const Frame view = render_view(pano, CameraPose({30, 0}, 60, 600, 600));
  int first = -1, last = -1;
  for (int x = 0; x < 600; ++x) {
    if (view.at(x, 300)[0] > 127) {
      if (first < 0) first = x;
      last = x;
    }
  }
  REQUIRE(first >= 0);
  const double measured = last - first + 1;
  // Oracle: 600 * tan(5 deg) / tan(30 deg) = 90.9 px.
  const double expected = 600 * std::tan(5 * kDeg) / std::tan(30 * kDeg);
  CHECK(std::abs(measured - expected) / expected < 0.05);
  CHECK((first + last + 1) / 2.0 == doctest::Approx(300).epsilon(0.01));
}

TEST_CASE("render_view is pan equivariant") {
  const Frame pano = test::random_blocks(720, 360, 9, 3);
  const int shift = 37;  // pixels, 18.5 degrees
  Frame shifted = test::translate_wrap(pano, shift, 0);
  for (double t : {0.0, 25.0, -60.0}) {
    const Frame a = render_view(pano, CameraPose({-20, t}, 50, 64, 48));
    const Frame b = render_view(shifted, CameraPose({-20 + shift * 0.5, t}, 50, 64, 48));
    int worst = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) worst = std::max(worst, std::abs(a.pixels[i] - b.pixels[i]));
    CHECK(worst <= 1);
  }
}
