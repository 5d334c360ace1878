#include "lidarcap/camera.hpp"

#include <cmath>

#include "lidarcap/error.hpp"

namespace lidarcap {

void CameraCalibration::validate() const {
  constexpr double tol = 1e-6;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += R[i][k] * R[j][k];
      double expected = i == j ? 1.0 : 0.0;
      if (!(std::abs(dot - expected) <= tol)) throw Error(Errc::NonOrthonormalRotation, "R rows are not orthonormal");
    }
  }
  double det = R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) -
               R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
               R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
  if (!(std::abs(det - 1.0) <= tol)) throw Error(Errc::NonOrthonormalRotation, "det(R) must be +1");
  if (!(fx > 0.0 && fy > 0.0)) throw Error(Errc::BadIntrinsics, "focal lengths must be positive");
  if (width <= 0 || height <= 0) throw Error(Errc::BadIntrinsics, "image size must be positive");
  if (!(cx > 0.0 && cx < width)) throw Error(Errc::BadIntrinsics, "cx outside (0, width)");
  if (!(cy > 0.0 && cy < height)) throw Error(Errc::BadIntrinsics, "cy outside (0, height)");
  for (double d : dist) {
    if (!std::isfinite(d)) throw Error(Errc::BadIntrinsics, "distortion coefficients must be finite");
  }
}

CameraPoint to_camera(const CameraCalibration& c, Vec3 host_point) noexcept {
  const double s[3] = {host_point.x, -host_point.y, host_point.z};
  double out[3];
  for (int i = 0; i < 3; ++i) out[i] = c.R[i][0] * s[0] + c.R[i][1] * s[1] + c.R[i][2] * s[2];
  return {{out[0] + c.t.x, out[1] + c.t.y, out[2] + c.t.z}};
}

std::optional<Vec2> project_point(const CameraCalibration& c, Vec3 host_point) noexcept {
  auto cam = to_camera(c, host_point);
  if (!(cam.depth() > kMinDepth)) return std::nullopt;
  double x = cam.p.x / cam.p.z;
  double y = cam.p.y / cam.p.z;
  const auto [k1, k2, p1, p2] = c.dist;
  double r2 = x * x + y * y;
  double radial = 1.0 + k1 * r2 + k2 * r2 * r2;
  double xd = x * radial + 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x);
  double yd = y * radial + p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y;
  Vec2 px{c.fx * xd + c.cx, c.fy * yd + c.cy};
  if (!std::isfinite(px.x) || !std::isfinite(px.y)) return std::nullopt;
  return px;
}

bool inside_image(const CameraCalibration& c, Vec2 px) noexcept {
  return px.x >= 0.0 && px.x < c.width && px.y >= 0.0 && px.y < c.height;
}

CameraCalibration front_camera(int width, int height, double horizontal_fov_rad) {
  CameraCalibration c;
  // sensor (ahead, left, up) -> camera (right, down, forward)
  c.R = {{{0, -1, 0}, {0, 0, -1}, {1, 0, 0}}};
  c.t = {0, 0, 0};
  c.cx = width / 2.0;
  c.cy = height / 2.0;
  c.fx = c.cx / std::tan(horizontal_fov_rad / 2.0);
  c.fy = c.fx;
  c.width = width;
  c.height = height;
  return c;
}

}  // namespace lidarcap
