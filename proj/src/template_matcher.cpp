#include "notesketch/template_matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "notesketch/error.hpp"

namespace notesketch {

void TemplateLibrary::add(const std::string& label, std::vector<Stroke> strokes) {
  Template t;
  t.label = label;
  t.strokeCount = static_cast<int>(strokes.size());
  t.points = normalize_multistroke(strokes, size_);
  t.source = std::move(strokes);
  classes_[label].push_back(std::move(t));
}

const std::vector<Template>& TemplateLibrary::templates(const std::string& label) const {
  auto it = classes_.find(label);
  if (it == classes_.end()) throw Error(ErrorCode::EmptyLibrary, "no templates for class " + label);
  return it->second;
}

std::vector<std::string> TemplateLibrary::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, list] : classes_) out.push_back(label);
  return out;
}

std::size_t TemplateLibrary::template_count() const {
  std::size_t n = 0;
  for (const auto& [label, list] : classes_) n += list.size();
  return n;
}

std::vector<int> stroke_point_budget(std::span<const Stroke> strokes, int n) {
  std::vector<double> lengths;
  lengths.reserve(strokes.size());
  for (const Stroke& s : strokes) lengths.push_back(path_length(s));
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  if (strokes.empty() || total <= 0.0) {
    throw Error(ErrorCode::DegenerateStroke, "strokes have zero total path length");
  }

  std::vector<int> budget(strokes.size(), 0);
  int taps = 0;
  int drawn = 0;
  for (double len : lengths) (len > 0.0 ? drawn : taps)++;
  const int available = n - taps;
  if (available < 2 * drawn) {
    throw Error(ErrorCode::DegenerateStroke, "too many strokes for a " + std::to_string(n) +
                                                 "-point budget");
  }

  // Largest-remainder apportionment with a floor of 2 points per drawn stroke.
  std::vector<double> remainder(strokes.size(), -1.0);
  int assigned = 0;
  for (std::size_t i = 0; i < strokes.size(); ++i) {
    if (lengths[i] <= 0.0) {
      budget[i] = 1;
      continue;
    }
    const double exact = lengths[i] / total * available;
    budget[i] = std::max(2, static_cast<int>(std::floor(exact)));
    remainder[i] = exact - std::floor(exact);
    assigned += budget[i];
  }
  std::vector<std::size_t> order(strokes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < available; k = (k + 1) % order.size()) {
    if (remainder[order[k]] < 0.0) continue;
    ++budget[order[k]];
    ++assigned;
  }
  while (assigned > available) {
    // Floors pushed us over; take from the largest stroke that can spare one.
    auto it = std::max_element(budget.begin(), budget.end());
    --*it;
    --assigned;
  }
  return budget;
}

PointSet normalize_multistroke(std::span<const Stroke> strokes, double size, int n) {
  const std::vector<int> budget = stroke_point_budget(strokes, n);
  PointSet cloud;
  cloud.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < strokes.size(); ++i) {
    if (budget[i] == 1) {
      const Point& p = strokes[i].points.front();
      cloud.push_back({p.x, p.y, std::nullopt});
      continue;
    }
    PointSet part = resample(strokes[i], budget[i]);
    cloud.insert(cloud.end(), part.begin(), part.end());
  }
  return translate_to_origin(scale_to(cloud, size));
}

double similarity_score(double d, double S) {
  return 1.0 - std::abs((1.0 - d) / std::sqrt(S * S + S * S)) / 10.0;
}

namespace {

double squared(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Directed squared Hausdorff, abandoning once it exceeds `bound2`.
double directed_bounded(std::span<const Point> from, std::span<const Point> to, double worst2,
                        double bound2) {
  for (const Point& p : from) {
    double best2 = std::numeric_limits<double>::infinity();
    for (const Point& q : to) {
      best2 = std::min(best2, squared(p, q));
      if (best2 <= worst2) break;  // p cannot raise the maximum
    }
    worst2 = std::max(worst2, best2);
    if (worst2 > bound2) return worst2;
  }
  return worst2;
}

bool allowed(const std::string& label, std::span<const std::string> filter) {
  return filter.empty() || std::find(filter.begin(), filter.end(), label) != filter.end();
}

}  // namespace

double bounded_hausdorff(std::span<const Point> a, std::span<const Point> b, double bound) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "hausdorff of an empty point set");
  const double bound2 = std::isinf(bound) ? bound : bound * bound;
  double worst2 = directed_bounded(a, b, 0.0, bound2);
  if (worst2 <= bound2) worst2 = directed_bounded(b, a, worst2, bound2);
  return std::sqrt(worst2);
}

MatchResult match_normalized(std::span<const Point> cloud, const TemplateLibrary& library,
                             std::span<const std::string> classFilter) {
  if (library.empty()) throw Error(ErrorCode::EmptyLibrary, "template library is empty");
  MatchResult best;
  best.distance = std::numeric_limits<double>::infinity();
  bool any = false;
  // std::map iterates labels in lexicographic order, so a strict `<` keeps the
  // first label and lowest index among equal distances.
  for (const auto& [label, list] : library.classes()) {
    if (!allowed(label, classFilter)) continue;
    for (std::size_t i = 0; i < list.size(); ++i) {
      any = true;
      const double d = bounded_hausdorff(cloud, list[i].points, best.distance);
      if (d < best.distance) {
        best.label = label;
        best.distance = d;
        best.templateIndex = static_cast<int>(i);
      }
    }
  }
  if (!any) throw Error(ErrorCode::EmptyLibrary, "class filter matches no library class");
  best.score = similarity_score(best.distance, library.size());
  return best;
}

MatchResult match(std::span<const Stroke> strokes, const TemplateLibrary& library,
                  std::span<const std::string> classFilter) {
  if (library.empty()) throw Error(ErrorCode::EmptyLibrary, "template library is empty");
  const PointSet cloud = normalize_multistroke(strokes, library.size());
  return match_normalized(cloud, library, classFilter);
}

}  // namespace notesketch
