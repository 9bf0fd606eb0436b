#include "notesketch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "notesketch/error.hpp"

namespace notesketch {

double BoundingBox::diagonal() const { return std::hypot(width(), height()); }

bool BoundingBox::contains(const Point& p, double margin) const {
  return p.x >= minX - margin && p.x <= maxX + margin && p.y >= minY - margin &&
         p.y <= maxY + margin;
}

BoundingBox BoundingBox::expanded(double margin) const {
  return {minX - margin, minY - margin, maxX + margin, maxY + margin};
}

BoundingBox BoundingBox::merged(const BoundingBox& other) const {
  return {std::min(minX, other.minX), std::min(minY, other.minY),
          std::max(maxX, other.maxX), std::max(maxY, other.maxY)};
}

Stroke make_stroke(int id, std::vector<Point> points) {
  if (points.empty()) {
    throw Error(ErrorCode::MalformedSketch, "stroke " + std::to_string(id) + " has no points");
  }
  Stroke s;
  s.id = id;
  s.points.reserve(points.size());
  for (const Point& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || (p.t && !std::isfinite(*p.t))) {
      throw Error(ErrorCode::MalformedSketch,
                  "stroke " + std::to_string(id) + " has a non-finite coordinate");
    }
    if (!s.points.empty()) {
      const Point& last = s.points.back();
      if (p.t && last.t && *p.t < *last.t) {
        throw Error(ErrorCode::MalformedSketch,
                    "stroke " + std::to_string(id) + " has decreasing timestamps");
      }
      if (p.x == last.x && p.y == last.y) continue;
    }
    s.points.push_back(p);
  }
  return s;
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double path_length(std::span<const Point> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

BoundingBox bounding_box(std::span<const Point> points) {
  if (points.empty()) return {};
  BoundingBox box{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Point& p : points) {
    box.minX = std::min(box.minX, p.x);
    box.minY = std::min(box.minY, p.y);
    box.maxX = std::max(box.maxX, p.x);
    box.maxY = std::max(box.maxY, p.y);
  }
  return box;
}

BoundingBox bounding_box(std::span<const Stroke> strokes) {
  std::optional<BoundingBox> box;
  for (const Stroke& s : strokes) {
    if (s.points.empty()) continue;
    const BoundingBox b = bounding_box(s.points);
    box = box ? box->merged(b) : b;
  }
  return box.value_or(BoundingBox{});
}

Point centroid(std::span<const Point> points) {
  Point c;
  if (points.empty()) return c;
  for (const Point& p : points) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(points.size());
  c.y /= static_cast<double>(points.size());
  return c;
}

double straightness(std::span<const Point> points) {
  const double length = path_length(points);
  if (length <= 0.0) return 1.0;
  return std::min(1.0, distance(points.front(), points.back()) / length);
}

namespace {

// Regression of v on u.
double regression(std::span<const Point> points, bool vertical) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  const Point c = centroid(points);
  double suv = 0.0, suu = 0.0;
  for (const Point& p : points) {
    const double u = vertical ? p.y - c.y : p.x - c.x;
    const double v = vertical ? p.x - c.x : p.y - c.y;
    suv += u * v;
    suu += u * u;
  }
  if (suu <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(suv / suu);
}

}  // namespace

double fitted_slope(std::span<const Point> points) { return regression(points, false); }
double fitted_slant(std::span<const Point> points) { return regression(points, true); }

PointSet resample(std::span<const Point> points, int n) {
  if (n < 2) throw Error(ErrorCode::DegenerateStroke, "resample needs at least 2 output points");
  const double total = path_length(points);
  if (points.size() < 2 || total <= 0.0) {
    throw Error(ErrorCode::DegenerateStroke, "cannot resample a stroke with zero path length");
  }
  PointSet out;
  out.reserve(static_cast<std::size_t>(n));
  const double interval = total / (n - 1);
  std::size_t seg = 1;
  double segStart = 0.0;  // arc length at points[seg - 1]
  for (int k = 0; k < n - 1; ++k) {
    const double target = interval * k;
    while (seg < points.size() - 1 &&
           segStart + distance(points[seg - 1], points[seg]) < target) {
      segStart += distance(points[seg - 1], points[seg]);
      ++seg;
    }
    const Point& a = points[seg - 1];
    const Point& b = points[seg];
    const double len = distance(a, b);
    const double f = len > 0.0 ? std::clamp((target - segStart) / len, 0.0, 1.0) : 0.0;
    out.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y), std::nullopt});
  }
  out.push_back({points.back().x, points.back().y, std::nullopt});
  return out;
}

PointSet scale_to(std::span<const Point> points, double size) {
  const BoundingBox box = bounding_box(points);
  const double larger = std::max(box.width(), box.height());
  if (points.empty() || larger <= 0.0) {
    throw Error(ErrorCode::DegenerateStroke, "cannot scale a point set with zero extent");
  }
  const double factor = size / larger;
  PointSet out;
  out.reserve(points.size());
  for (const Point& p : points) {
    out.push_back({box.minX + (p.x - box.minX) * factor, box.minY + (p.y - box.minY) * factor,
                   std::nullopt});
  }
  return out;
}

PointSet translate_to_origin(std::span<const Point> points) {
  const Point c = centroid(points);
  PointSet out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back({p.x - c.x, p.y - c.y, p.t});
  return out;
}

namespace {

double directed_hausdorff(std::span<const Point> from, std::span<const Point> to) {
  double worst = 0.0;
  for (const Point& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : to) best = std::min(best, distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "hausdorff of an empty point set");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 <= 0.0) return distance(p, a);
  const double f = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + f * dx), p.y - (a.y + f * dy));
}

}  // namespace notesketch
