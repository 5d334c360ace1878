#include "lidarcap/box.hpp"

#include <cmath>

namespace lidarcap {

Vec3 to_box_frame(const OrientedBox& box, Vec3 p) noexcept {
  double c = std::cos(box.yaw), s = std::sin(box.yaw);
  double dx = p.x - box.center.x, dy = p.y - box.center.y;
  return {c * dx + s * dy, -s * dx + c * dy, p.z - box.center.z};
}

bool box_contains(const OrientedBox& box, Vec3 p) noexcept {
  Vec3 q = to_box_frame(box, p);
  return std::abs(q.x) <= box.size.x / 2.0 && std::abs(q.y) <= box.size.y / 2.0 && std::abs(q.z) <= box.size.z / 2.0;
}

std::array<Vec3, 8> box_corners(const OrientedBox& box) noexcept {
  double c = std::cos(box.yaw), s = std::sin(box.yaw);
  double hl = box.size.x / 2.0, hw = box.size.y / 2.0, hh = box.size.z / 2.0;
  std::array<Vec3, 8> out;
  std::size_t k = 0;
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      for (double sz : {-1.0, 1.0}) {
        double lx = sx * hl, ly = sy * hw;
        out[k++] = {box.center.x + c * lx - s * ly, box.center.y + s * lx + c * ly, box.center.z + sz * hh};
      }
    }
  }
  return out;
}

}  // namespace lidarcap
