#include "ptzsim/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "ptzsim/errors.hpp"

namespace ptzsim {
namespace fs = std::filesystem;

namespace {

fs::path frame_path(const fs::path& root, int index) {
  char name[32];
  std::snprintf(name, sizeof(name), "%06d.png", index);
  return root / "frames" / name;
}

Frame read_png(const fs::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw DataError("cannot read image " + path.string());
  Frame f(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      std::uint8_t* px = f.at(x, y);
      px[0] = row[x][2];
      px[1] = row[x][1];
      px[2] = row[x][0];
    }
  }
  return f;
}

void write_png(const Frame& f, const fs::path& path) {
  cv::Mat bgr(f.height, f.width, CV_8UC3);
  for (int y = 0; y < f.height; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < f.width; ++x) {
      const std::uint8_t* px = f.at(x, y);
      row[x] = cv::Vec3b(px[2], px[1], px[0]);
    }
  }
  if (!cv::imwrite(path.string(), bgr)) throw DataError("cannot write image " + path.string());
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

template <typename T>
bool parse_number(const std::string& token, T& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (!token.empty() && token.front() == '+') ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

GroundTruthEntry parse_ground_truth_line(const std::string& line, int line_no) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() != 5) throw MalformedLine(line_no, "expected 5 fields, got " + std::to_string(tokens.size()));

  int index = 0;
  if (!parse_number(tokens[0], index) || index < 0) throw MalformedLine(line_no, "bad frame index '" + tokens[0] + "'");
  double geom[4];
  for (int k = 0; k < 4; ++k) {
    if (!parse_number(tokens[k + 1], geom[k]) || !std::isfinite(geom[k])) {
      throw MalformedLine(line_no, "bad number '" + tokens[k + 1] + "'");
    }
  }
  if (geom[0] == -1 && geom[1] == -1 && geom[2] == -1 && geom[3] == -1) return GroundTruthEntry::absent(index);
  if (geom[2] < 0 || geom[3] < 0) throw MalformedLine(line_no, "negative angular size");
  if (geom[1] < -90 || geom[1] > 90) throw MalformedLine(line_no, "tilt outside [-90, 90]");
  return {index, SphericalPoint(geom[0], geom[1]), geom[2], geom[3], true};
}

// Smooth gray value noise, seamless across the pan seam.
Frame make_background(int width, int height, std::mt19937& rng) {
  constexpr int kCell = 8;
  const int gw = width / kCell;
  const int gh = height / kCell + 2;
  std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
  for (double& g : grid) g = 60.0 + (rng() >> 24) * (130.0 / 255.0);

  Frame f(width, height);
  for (int y = 0; y < height; ++y) {
    const double gy = static_cast<double>(y) / kCell;
    const int y0 = static_cast<int>(gy);
    const double ty = gy - y0;
    for (int x = 0; x < width; ++x) {
      const double gx = static_cast<double>(x) / kCell;
      const int x0 = static_cast<int>(gx) % gw;
      const int x1 = (x0 + 1) % gw;
      const double tx = gx - std::floor(gx);
      auto g = [&](int cx, int cy) { return grid[static_cast<std::size_t>(cy) * gw + cx]; };
      const double top = g(x0, y0) + tx * (g(x1, y0) - g(x0, y0));
      const double bottom = g(x0, y0 + 1) + tx * (g(x1, y0 + 1) - g(x0, y0 + 1));
      const double v = top + ty * (bottom - top) + static_cast<int>(rng() >> 28) - 8;
      const auto gray = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
      std::uint8_t* px = f.at(x, y);
      px[0] = px[1] = px[2] = gray;
    }
  }
  return f;
}

// Concentric red/green/blue bands modulated by a random 4x4 block pattern.
struct TargetTexture {
  double shade[4][4];

  explicit TargetTexture(std::mt19937& rng) {
    for (auto& row : shade)
      for (double& s : row) s = 0.55 + (rng() >> 24) * (0.45 / 255.0);
  }

  // u, v in [0, 1) across the target, v = 0 at the top.
  void color(double u, double v, std::uint8_t* px) const {
    static constexpr std::uint8_t kBands[3][3] = {{230, 40, 40}, {40, 210, 60}, {50, 70, 230}};
    const double r = std::max(std::abs(u - 0.5), std::abs(v - 0.5));
    const int band = r < 1.0 / 6.0 ? 0 : (r < 1.0 / 3.0 ? 1 : 2);
    const double s = shade[std::min(3, static_cast<int>(v * 4))][std::min(3, static_cast<int>(u * 4))];
    for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>(std::lround(kBands[band][c] * s));
  }
};

void paint_target(Frame& pano, const TargetTexture& tex, SphericalPoint center, double width, double height) {
  if (width <= 0.0 || height <= 0.0) return;
  const int pw = pano.width;
  const int ph = pano.height;
  const double top_tilt = std::min(90.0, center.tilt() + height / 2.0);
  const double bottom_tilt = std::max(-90.0, center.tilt() - height / 2.0);
  const int y_begin = std::max(0, static_cast<int>(std::floor((90.0 - top_tilt) / 180.0 * ph)));
  const int y_end = std::min(ph - 1, static_cast<int>(std::ceil((90.0 - bottom_tilt) / 180.0 * ph)));
  const int x_half = static_cast<int>(std::ceil(width / 2.0 / 360.0 * pw)) + 1;
  const int x_center = static_cast<int>(std::floor((center.pan() + 180.0) / 360.0 * pw));
  for (int y = y_begin; y <= y_end; ++y) {
    const double tilt = 90.0 - (y + 0.5) / ph * 180.0;
    const double dv = center.tilt() - tilt;
    if (std::abs(dv) > height / 2.0) continue;
    for (int xo = -x_half; xo <= x_half; ++xo) {
      const int x = ((x_center + xo) % pw + pw) % pw;
      const double pan = (x + 0.5) / pw * 360.0 - 180.0;
      const double du = wrap_degrees(pan - center.pan());
      if (std::abs(du) > width / 2.0) continue;
      tex.color(std::min(du / width + 0.5, 0.999999), std::min(dv / height + 0.5, 0.999999), pano.at(x, y));
    }
  }
}

}  // namespace

Frame Sequence::panorama(int index) const {
  if (index < 0 || index >= frame_count()) throw InvalidArgument("frame index out of range");
  Frame f = frames[static_cast<std::size_t>(index)].load();
  f.timestamp = timestamp(index);
  return f;
}

std::optional<GroundTruthEntry> Sequence::ground_truth_at(int index) const {
  auto it = std::lower_bound(ground_truth.begin(), ground_truth.end(), index,
                             [](const GroundTruthEntry& e, int i) { return e.frame_index < i; });
  if (it == ground_truth.end() || it->frame_index != index) return std::nullopt;
  return *it;
}

Sequence load_sequence(const fs::path& root) {
  Sequence seq;
  const fs::path meta_path = root / "meta.json";
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw DataError("missing " + meta_path.string());
  try {
    const auto meta = nlohmann::json::parse(meta_in);
    seq.fps = meta.at("fps").get<double>();
    seq.name = meta.at("name").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed " + meta_path.string() + ": " + e.what());
  }
  if (!(seq.fps > 0.0)) throw DataError("fps must be positive");

  for (int i = 0; fs::exists(frame_path(root, i)); ++i) {
    seq.frames.emplace_back([path = frame_path(root, i)] { return read_png(path); });
  }
  if (seq.frames.empty()) throw DataError("no frames under " + (root / "frames").string());

  const fs::path gt_path = root / "groundtruth.txt";
  std::ifstream gt_in(gt_path);
  if (!gt_in) throw MissingGroundTruth("missing " + gt_path.string());
  std::string line;
  for (int line_no = 1; std::getline(gt_in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    GroundTruthEntry e = parse_ground_truth_line(line, line_no);
    if (e.frame_index >= seq.frame_count()) throw MalformedLine(line_no, "frame index beyond last frame");
    if (!seq.ground_truth.empty()) {
      const int prev = seq.ground_truth.back().frame_index;
      if (e.frame_index == prev) throw MalformedLine(line_no, "duplicate frame index " + std::to_string(prev));
      if (e.frame_index < prev) throw NonMonotoneIndex("line " + std::to_string(line_no) + ": frame index decreases");
    }
    seq.ground_truth.push_back(e);
  }
  auto first = seq.ground_truth_at(0);
  if (!first || !first->present) throw MissingGroundTruth("frame 0 has no target annotation");
  seq.initial_box = *first;
  return seq;
}

void write_sequence(const Sequence& seq, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root / "frames", ec);
  if (ec) throw DataError("cannot create " + (root / "frames").string() + ": " + ec.message());
  for (int i = 0; i < seq.frame_count(); ++i) write_png(seq.frames[static_cast<std::size_t>(i)].load(), frame_path(root, i));

  std::ofstream gt(root / "groundtruth.txt", std::ios::trunc);
  for (const auto& e : seq.ground_truth) {
    gt << e.frame_index << ' ';
    if (e.present) {
      gt << format_number(e.center.pan()) << ' ' << format_number(e.center.tilt()) << ' '
         << format_number(e.angular_width) << ' ' << format_number(e.angular_height) << '\n';
    } else {
      gt << "-1 -1 -1 -1\n";
    }
  }
  std::ofstream meta(root / "meta.json", std::ios::trunc);
  meta << nlohmann::json{{"fps", seq.fps}, {"name", seq.name}}.dump(2) << '\n';
  if (!gt || !meta) throw DataError("cannot write sequence files under " + root.string());
}

std::optional<BoundingBox> ground_truth_in_view(const GroundTruthEntry& entry, const CameraPose& pose) {
  if (!entry.present) return std::nullopt;
  const auto center = project_sphere_to_image(entry.center, pose);
  if (!center) return std::nullopt;
  double half_w = 0.0;
  double half_h = 0.0;
  for (double sx : {-0.5, 0.5}) {
    for (double sy : {-0.5, 0.5}) {
      const double tilt = std::clamp(entry.center.tilt() + sy * entry.angular_height, -90.0, 90.0);
      const auto corner = project_unclipped({entry.center.pan() + sx * entry.angular_width, tilt}, pose);
      if (!corner) continue;
      half_w = std::max(half_w, std::abs(corner->x - center->x));
      half_h = std::max(half_h, std::abs(corner->y - center->y));
    }
  }
  return BoundingBox::centered(*center, 2.0 * half_w, 2.0 * half_h);
}

int SyntheticSpec::frame_count() const { return std::max(1, static_cast<int>(std::floor(duration * fps + 1e-9))); }

SphericalPoint SyntheticSpec::position_at(double t) const {
  double pan = start.pan();
  double tilt = start.tilt();
  switch (law) {
    case MotionLaw::Static:
      break;
    case MotionLaw::ConstantVelocity:
      pan += velocity_pan * t;
      tilt += velocity_tilt * t;
      break;
    case MotionLaw::ConstantAcceleration:
      pan += velocity_pan * t + accel_pan * t * t / 2.0;
      tilt += velocity_tilt * t + accel_tilt * t * t / 2.0;
      break;
  }
  if (!(tilt >= -90.0 && tilt <= 90.0)) throw InvalidSpec("target tilt leaves [-90, 90] at t=" + std::to_string(t));
  return {pan, tilt};
}

Sequence generate_synthetic_sequence(const SyntheticSpec& spec) {
  if (!(spec.duration > 0.0)) throw InvalidSpec("duration must be positive");
  if (!(spec.fps > 0.0)) throw InvalidSpec("fps must be positive");
  if (spec.panorama_width < 16 || spec.panorama_width % 2 != 0) throw InvalidSpec("panorama width must be even and >= 16");
  if (spec.target_width < 0.0 || spec.target_height < 0.0) throw InvalidSpec("target size must be non-negative");
  if (!(spec.growth_per_frame > 0.0)) throw InvalidSpec("growth per frame must be positive");

  std::mt19937 rng(spec.seed);
  auto background = std::make_shared<const Frame>(make_background(spec.panorama_width, spec.panorama_width / 2, rng));
  auto texture = std::make_shared<const TargetTexture>(rng);

  Sequence seq;
  seq.name = spec.name;
  seq.fps = spec.fps;
  const int n = spec.frame_count();
  for (int i = 0; i < n; ++i) {
    const double t = i / spec.fps;
    const double scale = std::pow(spec.growth_per_frame, i);
    GroundTruthEntry e{i, spec.position_at(t), spec.target_width * scale, spec.target_height * scale, true};
    seq.ground_truth.push_back(e);
    seq.frames.emplace_back([background, texture, e] {
      Frame pano = *background;
      paint_target(pano, *texture, e.center, e.angular_width, e.angular_height);
      return pano;
    });
  }
  seq.initial_box = seq.ground_truth.front();
  return seq;
}

std::string to_string(MotionLaw law) {
  switch (law) {
    case MotionLaw::Static:
      return "static";
    case MotionLaw::ConstantVelocity:
      return "constant-velocity";
    case MotionLaw::ConstantAcceleration:
      return "constant-acceleration";
  }
  return "static";
}

MotionLaw motion_law_from_string(const std::string& s) {
  if (s == "static") return MotionLaw::Static;
  if (s == "constant-velocity") return MotionLaw::ConstantVelocity;
  if (s == "constant-acceleration") return MotionLaw::ConstantAcceleration;
  throw InvalidSpec("unknown motion law '" + s + "'");
}

}  // namespace ptzsim
