#pragma once

#include <array>
#include <optional>

#include "lidarcap/domain.hpp"

namespace lidarcap {

// Rigid LiDAR-to-camera extrinsics plus pinhole intrinsics with Brown-Conrady
// distortion (k1, k2 radial; p1, p2 tangential).
//
// Extrinsics act on the right-handed sensor frame (x ahead, y left, z up). Host
// frame points store y to the right, so projection mirrors y before applying R.
struct CameraCalibration {
  std::array<std::array<double, 3>, 3> R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  Vec3 t;
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.5;
  double cy = 0.5;
  std::array<double, 4> dist{0, 0, 0, 0};
  int width = 1;
  int height = 1;

  // Throws NonOrthonormalRotation or BadIntrinsics.
  void validate() const;

  friend bool operator==(const CameraCalibration&, const CameraCalibration&) = default;
};

inline constexpr double kMinDepth = 1e-6;

struct CameraPoint {
  Vec3 p;  // camera frame
  double depth() const noexcept { return p.z; }
};

// Host frame (y right) to camera frame.
CameraPoint to_camera(const CameraCalibration& calib, Vec3 host_point) noexcept;

// Distorted pixel coordinates, or nullopt when depth <= kMinDepth.
std::optional<Vec2> project_point(const CameraCalibration& calib, Vec3 host_point) noexcept;

bool inside_image(const CameraCalibration& calib, Vec2 pixel) noexcept;

// A forward-looking camera at the host origin: image x right, image y down,
// optical axis along the host heading.
CameraCalibration front_camera(int width, int height, double horizontal_fov_rad);

}  // namespace lidarcap
