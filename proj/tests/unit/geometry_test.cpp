#include <cmath>
#include <limits>

#include "doctest.h"
#include "notesketch/error.hpp"
#include "notesketch/geometry.hpp"

using namespace notesketch;

TEST_SUITE("geometry") {

TEST_CASE("path length of an open unit square is three sides") {
  const std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(path_length(square) == doctest::Approx(3.0));
}

TEST_CASE("resampling a right angle spaces points evenly along the path") {
  const std::vector<Point> corner = {{0, 0}, {4, 0}, {4, 4}};
  const PointSet r = resample(corner, 5);
  const std::vector<Point> expected = {{0, 0}, {2, 0}, {4, 0}, {4, 2}, {4, 4}};
  REQUIRE(r.size() == expected.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r[i].x == doctest::Approx(expected[i].x));
    CHECK(r[i].y == doctest::Approx(expected[i].y));
  }
}

TEST_CASE("resample keeps endpoints and rejects degenerate input") {
  const std::vector<Point> wiggle = {{3, 1}, {8, 9}, {2, 14}, {30, 2}};
  const PointSet r = resample(wiggle, 64);
  CHECK(r.size() == 64);
  CHECK(r.front() == wiggle.front());
  CHECK(r.back().x == doctest::Approx(30));
  CHECK(r.back().y == doctest::Approx(2));
  const std::vector<Point> still = {{5, 5}};
  CHECK_THROWS_AS(resample(still, 8), Error);
  CHECK_THROWS_AS(resample(wiggle, 1), Error);
}

TEST_CASE("scale_to maps the larger side onto the target size") {
  const std::vector<Point> box = {{10, 10}, {110, 10}, {110, 60}, {10, 60}};
  const BoundingBox b = bounding_box(scale_to(box, 250.0));
  CHECK(b.width() == doctest::Approx(250.0));
  CHECK(b.height() == doctest::Approx(125.0));
}

TEST_CASE("hausdorff is the larger of the two directed distances") {
  const std::vector<Point> a = {{0, 0}, {10, 0}};
  const std::vector<Point> b = {{0, 0}};
  CHECK(hausdorff(a, b) == doctest::Approx(10.0));
  CHECK(hausdorff(b, a) == doctest::Approx(10.0));
  CHECK(hausdorff(a, a) == 0.0);
  CHECK_THROWS_AS(hausdorff(a, std::vector<Point>{}), Error);
}

TEST_CASE("make_stroke drops repeated points and validates input") {
  const Stroke s = make_stroke(4, {{1, 1}, {1, 1}, {2, 2}, {2, 2}, {1, 1}});
  CHECK(s.id == 4);
  CHECK(s.points.size() == 3);
  CHECK_THROWS_AS(make_stroke(1, {}), Error);
  CHECK_THROWS_AS(make_stroke(1, {{0, std::numeric_limits<double>::quiet_NaN()}}), Error);
  CHECK_THROWS_AS(make_stroke(1, {{0, 0, 20.0}, {1, 1, 10.0}}), Error);
}

TEST_CASE("straightness and fitted slopes") {
  const std::vector<Point> flat = {{0, 0}, {5, 0.1}, {10, -0.1}, {15, 0}};
  CHECK(straightness(flat) > 0.99);
  CHECK(fitted_slope(flat) < 0.02);
  const std::vector<Point> upright = {{3, 0}, {3, 10}, {3, 20}};
  CHECK(fitted_slant(upright) == doctest::Approx(0.0));
  CHECK(std::isinf(fitted_slope(upright)));
  const std::vector<Point> vee = {{0, 0}, {5, 5}, {10, 0}};
  CHECK(straightness(vee) == doctest::Approx(10.0 / (2 * std::sqrt(50.0))));
  const std::vector<Point> tap = {{2, 2}};
  CHECK(straightness(tap) == 1.0);
}

TEST_CASE("bounding boxes and point-segment distance") {
  const std::vector<Point> pts = {{3, 7}, {-1, 2}, {5, 4}};
  const BoundingBox b = bounding_box(pts);
  CHECK(b == BoundingBox{-1, 2, 5, 7});
  CHECK(b.contains({0, 3}));
  CHECK_FALSE(b.contains({6, 3}));
  CHECK(b.contains({6, 3}, 1.0));
  CHECK(b.merged({10, 10, 11, 12}) == BoundingBox{-1, 2, 11, 12});
  CHECK(point_segment_distance({5, 3}, {0, 0}, {10, 0}) == doctest::Approx(3.0));
  CHECK(point_segment_distance({-4, 3}, {0, 0}, {10, 0}) == doctest::Approx(5.0));
  const Point c = centroid(std::vector<Point>{{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  CHECK(c.x == doctest::Approx(2.0));
  CHECK(c.y == doctest::Approx(2.0));
}

}
