#pragma once

#include <cstdint>
#include <vector>

namespace ptzsim {

/// RGB image, 8 bits per channel, row-major, stamped with simulated time.
struct Frame {
  double timestamp = 0.0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Frame() = default;
  Frame(int w, int h, double t = 0.0)
      : timestamp(t), width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* at(int x, int y) { return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3; }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }

  bool valid() const {
    return width > 0 && height > 0 && pixels.size() == static_cast<std::size_t>(width) * height * 3;
  }

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Single-channel float image used internally by the trackers.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  GrayImage() = default;
  GrayImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.0f) {}

  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Luma with 0.299 R + 0.587 G + 0.114 B.
GrayImage to_gray(const Frame& frame);

}  // namespace ptzsim
