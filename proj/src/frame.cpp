#include "ptzsim/frame.hpp"

namespace ptzsim {

GrayImage to_gray(const Frame& frame) {
  GrayImage out(frame.width, frame.height);
  const std::uint8_t* p = frame.pixels.data();
  for (float& v : out.data) {
    v = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
    p += 3;
  }
  return out;
}

}  // namespace ptzsim
