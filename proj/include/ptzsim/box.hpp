#pragma once

#include "ptzsim/geometry.hpp"

namespace ptzsim {

/// Axis-aligned pixel rectangle, top-left corner plus size.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  PlanePoint center() const { return {x + w / 2.0, y + h / 2.0}; }

  static BoundingBox centered(PlanePoint c, double w, double h) { return {c.x - w / 2.0, c.y - h / 2.0, w, h}; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

}  // namespace ptzsim
