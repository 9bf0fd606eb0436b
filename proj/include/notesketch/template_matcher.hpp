#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "notesketch/geometry.hpp"

namespace notesketch {

inline constexpr int kTemplatePoints = 64;
inline constexpr double kNormalizedSize = 250.0;

struct Template {
  std::string label;
  int strokeCount = 0;
  PointSet points;              // normalized cloud, kTemplatePoints entries
  std::vector<Stroke> source;   // raw capture the template was built from
};

// Immutable after loading; match() only reads it, so one library can be
// shared by every session.
class TemplateLibrary {
 public:
  explicit TemplateLibrary(double size = kNormalizedSize) : size_(size) {}

  // Normalizes `strokes` and appends them as the next exemplar of `label`.
  void add(const std::string& label, std::vector<Stroke> strokes);

  const std::map<std::string, std::vector<Template>>& classes() const { return classes_; }
  const std::vector<Template>& templates(const std::string& label) const;
  bool contains(const std::string& label) const { return classes_.count(label) != 0; }
  std::vector<std::string> labels() const;
  std::size_t template_count() const;
  bool empty() const { return classes_.empty(); }
  double size() const { return size_; }

 private:
  double size_;
  std::map<std::string, std::vector<Template>> classes_;
};

struct MatchResult {
  std::string label;
  double score = 0.0;
  double distance = 0.0;
  int templateIndex = -1;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Combines strokes into one cloud of `n` points. Each stroke receives a share
// of the budget proportional to its arc length (at least 2 points when its
// length is positive, a single point when it is a tap), then the cloud is
// scaled so its larger side is `size` and centred on its centroid.
PointSet normalize_multistroke(std::span<const Stroke> strokes, double size = kNormalizedSize,
                               int n = kTemplatePoints);

// Point budget per stroke used by normalize_multistroke.
std::vector<int> stroke_point_budget(std::span<const Stroke> strokes, int n = kTemplatePoints);

// score = 1 - |(1 - d) / sqrt(S^2 + S^2)| / 10
double similarity_score(double d, double S);

// Hausdorff distance that stops early once it is certain to exceed `bound`.
// Returns the exact distance whenever that distance is <= bound.
double bounded_hausdorff(std::span<const Point> a, std::span<const Point> b, double bound);

// Argmin Hausdorff over every template in the allowed classes (all classes
// when `classFilter` is empty). Ties go to the lower distance, then the
// lexicographically smaller label, then the lower template index.
MatchResult match(std::span<const Stroke> strokes, const TemplateLibrary& library,
                  std::span<const std::string> classFilter = {});
MatchResult match_normalized(std::span<const Point> cloud, const TemplateLibrary& library,
                             std::span<const std::string> classFilter = {});

}  // namespace notesketch
