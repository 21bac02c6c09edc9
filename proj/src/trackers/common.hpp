#pragma once

#include <algorithm>
#include <cmath>

#include "ptzsim/box.hpp"
#include "ptzsim/errors.hpp"
#include "ptzsim/frame.hpp"

namespace ptzsim::detail {

struct PixelRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

inline void require_trackable(const Frame& frame, const BoundingBox& box) {
  if (!(box.w > 0.0 && box.h > 0.0)) throw DegenerateBox("init box has zero area");
  if (box.x >= frame.width || box.y >= frame.height || box.x + box.w <= 0.0 || box.y + box.h <= 0.0) {
    throw DegenerateBox("init box lies entirely outside the frame");
  }
}

/// Integer rectangle covering `box`, clipped to the image.
inline PixelRect clip_to_image(const BoundingBox& box, int width, int height) {
  const int x0 = std::clamp(static_cast<int>(std::lround(box.x)), 0, width - 1);
  const int y0 = std::clamp(static_cast<int>(std::lround(box.y)), 0, height - 1);
  const int x1 = std::clamp(static_cast<int>(std::lround(box.x + box.w)), x0 + 1, width);
  const int y1 = std::clamp(static_cast<int>(std::lround(box.y + box.h)), y0 + 1, height);
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace ptzsim::detail
