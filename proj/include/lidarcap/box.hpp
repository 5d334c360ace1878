#pragma once

#include <array>

#include "lidarcap/domain.hpp"

namespace lidarcap {

// Oriented 3D box in the host frame; yaw rotates about z, +x toward +y.
struct OrientedBox {
  Vec3 center;
  Vec3 size;  // length (box x), width (box y), height (z)
  double yaw = 0.0;
};

inline OrientedBox box_of(const TrackSample& s) noexcept { return {s.center, s.size, s.yaw}; }

// Point expressed in box coordinates (origin at the center, axes along the box).
Vec3 to_box_frame(const OrientedBox& box, Vec3 p) noexcept;

// Boundary-inclusive containment.
bool box_contains(const OrientedBox& box, Vec3 p) noexcept;

std::array<Vec3, 8> box_corners(const OrientedBox& box) noexcept;

}  // namespace lidarcap
