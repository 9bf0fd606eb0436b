#pragma once

#include <optional>
#include <span>
#include <vector>

namespace notesketch {

inline constexpr double kEpsilon = 1e-6;

// Canvas pixel space: x grows rightward, y grows downward. `t` is the
// capture timestamp in milliseconds when the device reports one.
struct Point {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> t;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Stroke {
  int id = 0;
  std::vector<Point> points;

  friend bool operator==(const Stroke&, const Stroke&) = default;
};

struct BoundingBox {
  double minX = 0.0;
  double minY = 0.0;
  double maxX = 0.0;
  double maxY = 0.0;

  double width() const { return maxX - minX; }
  double height() const { return maxY - minY; }
  double centerX() const { return 0.5 * (minX + maxX); }
  double centerY() const { return 0.5 * (minY + maxY); }
  double diagonal() const;
  bool contains(const Point& p, double margin = 0.0) const;
  BoundingBox expanded(double margin) const;
  BoundingBox merged(const BoundingBox& other) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

using PointSet = std::vector<Point>;

// Validates coordinates and drops consecutive duplicates (same x and y).
// Throws MalformedSketch for empty or non-finite input, or timestamps that
// run backwards.
Stroke make_stroke(int id, std::vector<Point> points);

double distance(const Point& a, const Point& b);
double path_length(std::span<const Point> points);
inline double path_length(const Stroke& s) { return path_length(s.points); }

BoundingBox bounding_box(std::span<const Point> points);
BoundingBox bounding_box(std::span<const Stroke> strokes);
Point centroid(std::span<const Point> points);

// Endpoint distance over path length; 1 for a perfect segment. A stroke with
// zero path length reports 1.
double straightness(std::span<const Point> points);

// |dy/dx| and |dx/dy| of the least-squares line through the points; infinity
// when the points have no spread along the fitted axis.
double fitted_slope(std::span<const Point> points);
double fitted_slant(std::span<const Point> points);

// n points at equal arc-length spacing; endpoints are preserved.
PointSet resample(std::span<const Point> points, int n);
inline PointSet resample(const Stroke& s, int n) { return resample(s.points, n); }

// Uniform scale about the bounding-box origin so the larger dimension
// becomes `size`.
PointSet scale_to(std::span<const Point> points, double size);
PointSet translate_to_origin(std::span<const Point> points);

// Symmetric Hausdorff distance (exact double loop).
double hausdorff(std::span<const Point> a, std::span<const Point> b);

double point_segment_distance(const Point& p, const Point& a, const Point& b);

}  // namespace notesketch
