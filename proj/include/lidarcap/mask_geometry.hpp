#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lidarcap/box.hpp"
#include "lidarcap/camera.hpp"
#include "lidarcap/domain.hpp"

namespace lidarcap {

inline constexpr double kCollinearEps = 1e-9;

// Twice the signed area of (o, a, b); positive for a counter-clockwise turn.
double cross(Vec2 o, Vec2 a, Vec2 b) noexcept;

std::vector<Vec3> extract_box_points(std::span<const Vec3> points, const OrientedBox& box);

// Projects host-frame points; points at depth <= kMinDepth are dropped.
std::vector<Vec2> project_points(std::span<const Vec3> points, const CameraCalibration& calib);

struct Polygon {
  std::vector<Vec2> vertices;  // counter-clockwise, starting at the lowest-then-leftmost vertex
  bool degenerate = false;     // fewer than three vertices
};

// Andrew's monotone chain. Collinear boundary points are dropped. Throws EmptyInput.
Polygon convex_hull(std::span<const Vec2> points);

// True when p lies inside or on the convex polygon (tolerance `eps` on the edge tests).
bool polygon_contains(const Polygon& poly, Vec2 p, double eps = kCollinearEps) noexcept;

double polygon_area(const Polygon& poly) noexcept;

// Sutherland-Hodgman clip of a convex polygon to [0, width] x [0, height].
Polygon clip_to_rect(const Polygon& poly, double width, double height);

// Row-major 8-bit mask; 255 marks pixels whose center lies inside the polygon.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t count_set() const noexcept;
  friend bool operator==(const Raster&, const Raster&) = default;
};

// Scanline fill, rows distributed across OpenMP threads.
Raster rasterize(const Polygon& poly, int width, int height);

// Binary PGM (P5), 0 background and 255 mask.
void write_pgm(const std::string& path, const Raster& raster);
Raster read_pgm(const std::string& path);

struct MaskOptions {
  bool fallback_to_box_corners = true;
  bool rasterize = false;
};

struct MaskArtifact {
  std::string clip_id;
  std::string track_id;
  std::size_t frame = 0;
  Polygon polygon;
  std::optional<Raster> raster;
};

// Points in the box, projected, hulled, then clipped to the image. Without LiDAR
// points the eight box corners stand in (unless disabled: NoLidarPoints).
// Throws NoProjectablePoints when nothing lands in front of the camera or in the image.
MaskArtifact object_mask(const TrackSample& sample, const CameraCalibration& calib, const MaskOptions& options = {});

namespace reference {

// Per-pixel point-in-polygon test; the serial oracle for `rasterize`.
Raster rasterize_serial(const Polygon& poly, int width, int height);

}  // namespace reference

}  // namespace lidarcap
