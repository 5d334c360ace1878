#include "lidarcap/mask_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lidarcap/error.hpp"

namespace lidarcap {

double cross(Vec2 o, Vec2 a, Vec2 b) noexcept { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<Vec3> extract_box_points(std::span<const Vec3> points, const OrientedBox& box) {
  std::vector<Vec3> out;
  for (const auto& p : points) {
    if (box_contains(box, p)) out.push_back(p);
  }
  return out;
}

std::vector<Vec2> project_points(std::span<const Vec3> points, const CameraCalibration& calib) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (auto px = project_point(calib, p)) out.push_back(*px);
  }
  return out;
}

namespace {

bool lex_less(Vec2 a, Vec2 b) noexcept { return a.x < b.x || (a.x == b.x && a.y < b.y); }

void rotate_to_lowest(std::vector<Vec2>& v) {
  auto start = std::min_element(v.begin(), v.end(), [](Vec2 a, Vec2 b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
  std::rotate(v.begin(), start, v.end());
}

}  // namespace

Polygon convex_hull(std::span<const Vec2> input) {
  if (input.empty()) throw Error(Errc::EmptyInput, "convex hull of an empty point set");
  std::vector<Vec2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return {pts, true};

  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kCollinearEps) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= kCollinearEps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  rotate_to_lowest(hull);
  return {hull, hull.size() < 3};
}

bool polygon_contains(const Polygon& poly, Vec2 p, double eps) noexcept {
  const auto& v = poly.vertices;
  if (v.empty()) return false;
  if (v.size() == 1) return std::abs(v[0].x - p.x) <= eps && std::abs(v[0].y - p.y) <= eps;
  if (v.size() == 2) {
    if (std::abs(cross(v[0], v[1], p)) > eps) return false;
    double minx = std::min(v[0].x, v[1].x) - eps, maxx = std::max(v[0].x, v[1].x) + eps;
    double miny = std::min(v[0].y, v[1].y) - eps, maxy = std::max(v[0].y, v[1].y) + eps;
    return p.x >= minx && p.x <= maxx && p.y >= miny && p.y <= maxy;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[i], v[(i + 1) % v.size()], p) < -eps) return false;
  }
  return true;
}

double polygon_area(const Polygon& poly) noexcept {
  const auto& v = poly.vertices;
  if (v.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

Polygon clip_to_rect(const Polygon& poly, double width, double height) {
  std::vector<Vec2> pts = poly.vertices;
  // Each boundary is (inside test, intersection along the edge).
  struct Boundary {
    int axis;  // 0 = x, 1 = y
    double value;
    bool keep_greater;
  };
  const Boundary bounds[] = {{0, 0.0, true}, {0, width, false}, {1, 0.0, true}, {1, height, false}};
  for (const auto& b : bounds) {
    if (pts.empty()) break;
    auto coord = [&](Vec2 p) { return b.axis == 0 ? p.x : p.y; };
    auto inside = [&](Vec2 p) { return b.keep_greater ? coord(p) >= b.value : coord(p) <= b.value; };
    auto intersect = [&](Vec2 a, Vec2 c) {
      double f = (b.value - coord(a)) / (coord(c) - coord(a));
      Vec2 r{a.x + f * (c.x - a.x), a.y + f * (c.y - a.y)};
      if (b.axis == 0) r.x = b.value; else r.y = b.value;
      return r;
    };
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Vec2 cur = pts[i];
      Vec2 prev = pts[(i + pts.size() - 1) % pts.size()];
      bool cin = inside(cur), pin = inside(prev);
      if (cin) {
        if (!pin) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (pin) {
        out.push_back(intersect(prev, cur));
      }
    }
    pts = std::move(out);
  }
  if (pts.empty()) return {{}, true};
  return convex_hull(pts);
}

std::size_t Raster::count_set() const noexcept {
  return static_cast<std::size_t>(std::count_if(pixels.begin(), pixels.end(), [](std::uint8_t p) { return p != 0; }));
}

namespace {

// Span of x where the horizontal line y = yc meets the convex polygon.
bool row_span(const std::vector<Vec2>& v, double yc, double& xl, double& xr) {
  bool hit = false;
  xl = std::numeric_limits<double>::infinity();
  xr = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 a = v[i], b = v[(i + 1) % v.size()];
    double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (yc < lo || yc > hi) continue;
    if (a.y == b.y) {
      xl = std::min({xl, a.x, b.x});
      xr = std::max({xr, a.x, b.x});
    } else {
      double x = a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y);
      xl = std::min(xl, x);
      xr = std::max(xr, x);
    }
    hit = true;
  }
  return hit;
}

}  // namespace

Raster rasterize(const Polygon& poly, int width, int height) {
  Raster r{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
  if (poly.degenerate || poly.vertices.size() < 3) return r;
  const auto& v = poly.vertices;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    double xl, xr;
    if (!row_span(v, y + 0.5, xl, xr)) continue;
    int first = std::max(0, static_cast<int>(std::ceil(xl - 0.5)));
    int last = std::min(width - 1, static_cast<int>(std::floor(xr - 0.5)));
    auto* row = r.pixels.data() + static_cast<std::size_t>(y) * width;
    for (int x = first; x <= last; ++x) row[x] = 255;
  }
  return r;
}

namespace reference {

Raster rasterize_serial(const Polygon& poly, int width, int height) {
  Raster r{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
  if (poly.degenerate || poly.vertices.size() < 3) return r;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (polygon_contains(poly, {x + 0.5, y + 0.5}, 0.0)) r.pixels[static_cast<std::size_t>(y) * width + x] = 255;
    }
  }
  return r;
}

}  // namespace reference

void write_pgm(const std::string& path, const Raster& raster) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot open " + path + " for writing");
  out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.pixels.data()), static_cast<std::streamsize>(raster.pixels.size()));
  if (!out) throw Error(Errc::Io, "failed writing " + path);
}

Raster read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  std::string magic;
  int maxval = 0;
  Raster r;
  in >> magic >> r.width >> r.height >> maxval;
  if (magic != "P5" || maxval != 255 || r.width <= 0 || r.height <= 0) throw Error(Errc::ParseError, "not an 8-bit P5 file: " + path);
  in.get();
  r.pixels.resize(static_cast<std::size_t>(r.width) * r.height);
  in.read(reinterpret_cast<char*>(r.pixels.data()), static_cast<std::streamsize>(r.pixels.size()));
  if (!in) throw Error(Errc::ParseError, "truncated PGM: " + path);
  return r;
}

MaskArtifact object_mask(const TrackSample& sample, const CameraCalibration& calib, const MaskOptions& options) {
  const OrientedBox box = box_of(sample);
  std::vector<Vec3> pts = extract_box_points(sample.points, box);
  if (pts.empty()) {
    if (!options.fallback_to_box_corners) throw Error(Errc::NoLidarPoints, "no LiDAR points inside the box of " + sample.track_id);
    auto corners = box_corners(box);
    pts.assign(corners.begin(), corners.end());
  }
  auto pixels = project_points(pts, calib);
  if (pixels.empty()) throw Error(Errc::NoProjectablePoints, "every point of " + sample.track_id + " is behind the camera");
  Polygon clipped = clip_to_rect(convex_hull(pixels), calib.width, calib.height);
  if (clipped.vertices.empty()) throw Error(Errc::NoProjectablePoints, "mask of " + sample.track_id + " falls outside the image");

  MaskArtifact m;
  m.track_id = sample.track_id;
  m.polygon = std::move(clipped);
  if (options.rasterize) m.raster = rasterize(m.polygon, calib.width, calib.height);
  return m;
}

}  // namespace lidarcap
