#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "ptzsim/dataset.hpp"
#include "ptzsim/errors.hpp"

using namespace ptzsim;
namespace fs = std::filesystem;

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ptzsim_test_dataset_" + name);
  fs::remove_all(p);
  return p;
}

SyntheticSpec small_spec(MotionLaw law) {
  SyntheticSpec s;
  s.duration = 1.0;
  s.fps = 10.0;
  s.panorama_width = 256;
  s.law = law;
  return s;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

// Minimal on-disk sequence with `frames` images and the given ground truth text.
fs::path tiny_dataset(const std::string& name, int frames, const std::string& gt) {
  SyntheticSpec s = small_spec(MotionLaw::Static);
  s.duration = frames / s.fps;
  const fs::path root = scratch(name);
  write_sequence(generate_synthetic_sequence(s), root);
  write_text(root / "meta.json", R"({"fps": 30, "name": "tiny"})");
  write_text(root / "groundtruth.txt", gt);
  return root;
}

}  // namespace

TEST_CASE("load_sequence assigns index/fps timestamps") {
  const fs::path root = tiny_dataset("timestamps", 3, "0 0 0 8 8\n1 1 0 8 8\n2 2 0 8 8\n");
  const Sequence seq = load_sequence(root);
  REQUIRE(seq.frame_count() == 3);
  CHECK(seq.name == "tiny");
  CHECK(seq.panorama(0).timestamp == 0.0);
  CHECK(seq.panorama(1).timestamp == doctest::Approx(1.0 / 30));
  CHECK(seq.panorama(2).timestamp == doctest::Approx(2.0 / 30));
  CHECK(seq.panorama(1).width == 256);
  CHECK(seq.initial_box.center == SphericalPoint(0, 0));
}

TEST_CASE("absent sentinel and annotation errors") {
  SUBCASE("sentinel") {
    const Sequence seq = load_sequence(tiny_dataset("sentinel", 6, "0 0 0 8 8\n5 -1 -1 -1 -1\n"));
    auto e = seq.ground_truth_at(5);
    REQUIRE(e);
    CHECK_FALSE(e->present);
    CHECK(e->frame_index == 5);
    CHECK_FALSE(seq.ground_truth_at(3));
  }
  SUBCASE("duplicate index") {
    const auto root = tiny_dataset("dup", 3, "0 0 0 8 8\n1 0 0 8 8\n1 0 0 8 8\n");
    try {
      load_sequence(root);
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line_no() == 3);
    }
  }
  SUBCASE("decreasing index") {
    CHECK_THROWS_AS(load_sequence(tiny_dataset("dec", 3, "0 0 0 8 8\n2 0 0 8 8\n1 0 0 8 8\n")), NonMonotoneIndex);
  }
  SUBCASE("malformed fields") {
    CHECK_THROWS_AS(load_sequence(tiny_dataset("fields", 3, "0 0 0 8\n")), MalformedLine);
    CHECK_THROWS_AS(load_sequence(tiny_dataset("nan", 3, "0 0 abc 8 8\n")), MalformedLine);
    CHECK_THROWS_AS(load_sequence(tiny_dataset("range", 3, "0 0 0 8 8\n7 0 0 8 8\n")), MalformedLine);
    CHECK_THROWS_AS(load_sequence(tiny_dataset("tilt", 3, "0 0 95 8 8\n")), MalformedLine);
  }
  SUBCASE("missing ground truth") {
    const auto root = tiny_dataset("missing", 3, "");
    fs::remove(root / "groundtruth.txt");
    CHECK_THROWS_AS(load_sequence(root), MissingGroundTruth);
    CHECK_THROWS_AS(load_sequence(tiny_dataset("nofirst", 3, "1 0 0 8 8\n")), MissingGroundTruth);
  }
}

TEST_CASE("write/load round trip preserves the sequence") {
  SyntheticSpec s = small_spec(MotionLaw::ConstantAcceleration);
  s.velocity_pan = 3.3;
  s.accel_pan = 1.7;
  s.accel_tilt = -0.9;
  s.start = {170.0, 12.5};
  const Sequence original = generate_synthetic_sequence(s);
  const fs::path root = scratch("roundtrip");
  write_sequence(original, root);
  const Sequence loaded = load_sequence(root);
  CHECK(loaded.name == original.name);
  CHECK(loaded.fps == original.fps);
  REQUIRE(loaded.frame_count() == original.frame_count());
  CHECK(loaded.ground_truth == original.ground_truth);
  CHECK(loaded.initial_box == original.initial_box);
  for (int i : {0, 4, original.frame_count() - 1}) CHECK(loaded.panorama(i) == original.panorama(i));
}

TEST_CASE("ground_truth_in_view examples") {
  const CameraPose pose({0, 0}, 90, 800, 800);
  SUBCASE("zero size at the aim") {
    auto box = ground_truth_in_view({0, {0, 0}, 0, 0, true}, pose);
    REQUIRE(box);
    CHECK(box->area() == 0.0);
    CHECK(box->center() == PlanePoint{400, 400});
  }
  SUBCASE("outside the frustum") { CHECK_FALSE(ground_truth_in_view({0, {120, 0}, 5, 5, true}, pose)); }
  SUBCASE("absent entry") { CHECK_FALSE(ground_truth_in_view(GroundTruthEntry::absent(0), pose)); }
  SUBCASE("pinhole width") {
    auto box = ground_truth_in_view({0, {0, 0}, 10, 10, true}, pose);
    REQUIRE(box);
    const double expected = 800 * std::tan(5 * kDeg) / std::tan(45 * kDeg);  // 69.99 px
    CHECK(std::abs(box->w - expected) / expected < 0.01);
  }
}

TEST_CASE("ground truth box is centered on the projected target center") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pan(-180, 180), tilt(-70, 70), off(-20, 20), size(0, 1);
  for (int i = 0; i < 500; ++i) {
    const CameraPose pose({pan(rng), tilt(rng)}, 90, 640, 480);
    const SphericalPoint c(pose.aim.pan() + off(rng), std::clamp(pose.aim.tilt() + off(rng), -80.0, 80.0));
    const double hfov4 = pose.hfov / 4;
    const GroundTruthEntry e{0, c, size(rng) * hfov4, size(rng) * hfov4, true};
    const auto projected = project_sphere_to_image(c, pose);
    const auto box = ground_truth_in_view(e, pose);
    REQUIRE(projected.has_value() == box.has_value());
    if (!box) continue;
    CHECK(std::hypot(box->center().x - projected->x, box->center().y - projected->y) <= 0.5);
  }
}

TEST_CASE("synthetic sequences follow their motion law exactly") {
  SUBCASE("static") {
    SyntheticSpec s = small_spec(MotionLaw::Static);
    s.start = {0, 0};
    const Sequence seq = generate_synthetic_sequence(s);
    REQUIRE(seq.frame_count() == 10);
    for (const auto& e : seq.ground_truth) CHECK(e.center == SphericalPoint(0, 0));
  }
  SUBCASE("constant velocity") {
    SyntheticSpec s = small_spec(MotionLaw::ConstantVelocity);
    s.velocity_pan = 10;
    const Sequence seq = generate_synthetic_sequence(s);
    for (const auto& e : seq.ground_truth) CHECK(std::abs(e.center.pan() - e.frame_index) <= 1e-9);
  }
  SUBCASE("constant acceleration") {
    SyntheticSpec s = small_spec(MotionLaw::ConstantAcceleration);
    s.duration = 2.0;
    s.accel_pan = 4;
    const Sequence seq = generate_synthetic_sequence(s);
    auto at_1s = seq.ground_truth_at(10);
    REQUIRE(at_1s);
    CHECK(std::abs(at_1s->center.pan() - 2.0) <= 1e-9);
    for (const auto& e : seq.ground_truth) {
      const double t = e.frame_index / 10.0;
      CHECK(std::abs(e.center.pan() - 2.0 * t * t) <= 1e-9);
    }
  }
  SUBCASE("pan wraps across the seam") {
    SyntheticSpec s = small_spec(MotionLaw::ConstantVelocity);
    s.start = {175, 0};
    s.velocity_pan = 20;
    const Sequence seq = generate_synthetic_sequence(s);
    for (const auto& e : seq.ground_truth) {
      const double expected = 175 + 20 * e.frame_index / 10.0;
      CHECK(std::abs(wrap_degrees(e.center.pan() - expected)) <= 1e-9);
    }
  }
}

TEST_CASE("synthetic generation is deterministic and validated") {
  SyntheticSpec s = small_spec(MotionLaw::ConstantVelocity);
  s.velocity_pan = 5;
  const Sequence a = generate_synthetic_sequence(s);
  const Sequence b = generate_synthetic_sequence(s);
  CHECK(a.panorama(3) == b.panorama(3));
  s.seed = 2;
  CHECK_FALSE(generate_synthetic_sequence(s).panorama(3) == a.panorama(3));

  SyntheticSpec bad = small_spec(MotionLaw::Static);
  bad.duration = 0;
  CHECK_THROWS_AS(generate_synthetic_sequence(bad), InvalidSpec);
  bad = small_spec(MotionLaw::Static);
  bad.fps = -1;
  CHECK_THROWS_AS(generate_synthetic_sequence(bad), InvalidSpec);
  bad = small_spec(MotionLaw::ConstantVelocity);
  bad.velocity_tilt = 200;
  CHECK_THROWS_AS(generate_synthetic_sequence(bad), InvalidSpec);
}
