#include "notesketch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "notesketch/error.hpp"

namespace notesketch::synth {

namespace {

using Piece = std::vector<Point>;
using Outline = std::vector<Piece>;

Point P(double x, double y) { return Point{x, y, std::nullopt}; }

// Glyph outlines in staff steps, y down. Pieces meet at corners; a piece
// with more than two points is drawn as a smooth curve through them.
const Outline kTreble = {{P(0.45, 5.1), P(0.7, 5.4), P(1.0, 5.1), P(0.9, 4.2), P(0.75, 2.5),
                          P(0.65, 0.5), P(0.85, -1.1), P(1.15, -1.5), P(1.25, -0.9), P(0.95, 0.0),
                          P(0.25, 1.3), P(0.0, 2.4), P(0.3, 3.4), P(0.95, 3.7), P(1.55, 3.3),
                          P(1.55, 2.6), P(1.05, 2.3), P(0.6, 2.7), P(0.75, 3.1)}};
const Outline kBassBody = {{P(0.3, 1.05), P(0.1, 0.7), P(0.35, 0.2), P(0.9, 0.0), P(1.5, 0.2),
                            P(1.75, 0.8), P(1.55, 1.6), P(1.0, 2.3), P(0.2, 3.0)}};
const Outline kSharpBars = {{P(0.0, 0.15), P(1.0, -0.05)},
                            {P(1.0, -0.05), P(0.05, 0.7)},
                            {P(0.05, 0.7), P(1.0, 0.5)}};
const Outline kSharpPosts = {{P(0.3, 1.45), P(0.3, -0.7)},
                             {P(0.3, -0.7), P(0.7, 1.35)},
                             {P(0.7, 1.35), P(0.7, -0.8)}};
const Outline kFlat = {{P(0.0, 0.0), P(0.0, 2.2)},
                       {P(0.0, 2.2), P(0.45, 1.8), P(0.75, 1.45), P(0.55, 1.15), P(0.15, 1.3),
                        P(0.0, 1.55)}};
const Outline kQuarterRest = {{P(0.25, 0.0), P(0.8, 0.7)},
                              {P(0.8, 0.7), P(0.3, 1.3)},
                              {P(0.3, 1.3), P(0.85, 1.9)},
                              {P(0.85, 1.9), P(0.35, 1.85), P(0.2, 2.3), P(0.6, 2.8)}};
const Outline kEighthRest = {{P(0.3, 0.4), P(0.1, 0.2), P(0.3, 0.0), P(0.45, 0.25), P(0.75, 0.3),
                              P(1.05, 0.05)},
                             {P(1.05, 0.05), P(0.5, 1.8)}};
const Outline kBlockOutline = {{P(0.0, 0.0), P(1.2, 0.0)},
                               {P(1.2, 0.0), P(1.2, 0.5)},
                               {P(1.2, 0.5), P(0.0, 0.5)},
                               {P(0.0, 0.5), P(0.05, -0.02)}};
const Outline kBlockFill = {{P(0.1, 0.12), P(1.1, 0.12)},
                            {P(1.1, 0.12), P(0.1, 0.25)},
                            {P(0.1, 0.25), P(1.1, 0.25)},
                            {P(1.1, 0.25), P(0.1, 0.38)},
                            {P(0.1, 0.38), P(1.1, 0.38)}};
const Outline kFlagDown = {{P(0.0, 0.0), P(0.5, 0.5), P(0.85, 1.1), P(0.65, 1.8)}};

// Digits fill a 1.2 x 1.9 box.
const Outline kDigits[10] = {
    {{P(0.6, 0.0), P(0.15, 0.35), P(0.05, 0.95), P(0.2, 1.6), P(0.6, 1.9), P(1.0, 1.6),
      P(1.15, 0.95), P(1.05, 0.35), P(0.6, 0.0), P(0.35, 0.12)}},
    {{P(0.25, 0.45), P(0.75, 0.0)}, {P(0.75, 0.0), P(0.75, 1.9)}},
    {{P(0.1, 0.45), P(0.5, 0.0), P(1.05, 0.2), P(1.0, 0.75), P(0.55, 1.3), P(0.05, 1.9)},
     {P(0.05, 1.9), P(1.2, 1.9)}},
    {{P(0.1, 0.25), P(0.6, 0.0), P(1.1, 0.35), P(0.9, 0.8), P(0.45, 0.95), P(1.0, 1.1),
      P(1.15, 1.5), P(0.6, 1.9), P(0.05, 1.7)}},
    {{P(0.9, 1.9), P(0.9, 0.0)}, {P(0.9, 0.0), P(0.0, 1.3)}, {P(0.0, 1.3), P(1.25, 1.3)}},
    {{P(1.1, 0.0), P(0.2, 0.0)},
     {P(0.2, 0.0), P(0.15, 0.8)},
     {P(0.15, 0.8), P(0.7, 0.7), P(1.15, 1.1), P(1.0, 1.7), P(0.5, 1.9), P(0.05, 1.7)}},
    {{P(1.0, 0.1), P(0.5, 0.1), P(0.1, 0.8), P(0.1, 1.5), P(0.5, 1.9), P(1.0, 1.6), P(1.0, 1.2),
      P(0.5, 1.0), P(0.15, 1.3)}},
    {{P(0.0, 0.0), P(1.2, 0.0)}, {P(1.2, 0.0), P(0.4, 1.9)}},
    {{P(1.0, 0.35), P(0.6, 0.0), P(0.15, 0.35), P(0.6, 0.9), P(1.1, 1.4), P(0.6, 1.9),
      P(0.1, 1.4), P(0.6, 0.9), P(1.0, 0.45)}},
    {{P(1.0, 0.6), P(0.6, 0.9), P(0.15, 0.5), P(0.5, 0.0), P(1.0, 0.3), P(1.0, 1.0),
      P(0.9, 1.9)}},
};

Point catmull_rom(const Point& p0, const Point& p1, const Point& p2, const Point& p3, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  auto f = [&](double a, double b, double c, double d) {
    return 0.5 * (2 * b + (-a + c) * t + (2 * a - 5 * b + 4 * c - d) * t2 + (-a + 3 * b - 3 * c + d) * t3);
  };
  return P(f(p0.x, p1.x, p2.x, p3.x), f(p0.y, p1.y, p2.y, p3.y));
}

std::vector<Point> densify(const Piece& piece) {
  if (piece.size() == 2) return piece;
  std::vector<Point> out;
  for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
    const Point& p0 = piece[i == 0 ? 0 : i - 1];
    const Point& p1 = piece[i];
    const Point& p2 = piece[i + 1];
    const Point& p3 = piece[std::min(i + 2, piece.size() - 1)];
    for (int k = 0; k < 16; ++k) out.push_back(catmull_rom(p0, p1, p2, p3, k / 16.0));
  }
  out.push_back(piece.back());
  return out;
}

}  // namespace

Composer::Composer(std::uint64_t seed, PenOptions options, double canvasWidth, double canvasHeight)
    : rng_(seed), options_(options), width_(canvasWidth), height_(canvasHeight) {}

std::vector<Point> Composer::trace(const Outline& outline, double ox, double oy, double unit) {
  std::normal_distribution<double> wobble(0.0, options_.shapeJitter);
  std::uniform_real_distribution<double> spacing(options_.minSpacing, options_.maxSpacing);
  std::vector<Point> out;
  Point carried;
  bool haveCarried = false;
  for (const Piece& piece : outline) {
    Piece px;
    for (std::size_t i = 0; i < piece.size(); ++i) {
      if (i == 0 && haveCarried) {
        px.push_back(carried);
        continue;
      }
      px.push_back(P(ox + (piece[i].x + wobble(rng_)) * unit, oy + (piece[i].y + wobble(rng_)) * unit));
    }
    carried = px.back();
    haveCarried = true;

    const std::vector<Point> dense = densify(px);
    const double length = path_length(dense);
    // Straight runs are drawn fast, so the tablet samples them sparsely.
    double gap = spacing(rng_);
    if (straightness(dense) > 0.98) gap *= 2.0 * std::max(1.0, std::sqrt(length / 100.0));
    const int n = std::max(2, static_cast<int>(std::lround(length / gap)) + 1);
    std::vector<Point> sampled = length > 0.0 ? resample(dense, n) : std::vector<Point>{dense.front()};
    if (!out.empty()) sampled.erase(sampled.begin());
    out.insert(out.end(), sampled.begin(), sampled.end());
  }
  return out;
}

Stroke Composer::make(std::vector<Point> points) {
  Stroke s;
  s.points = std::move(points);
  return s;
}

Stroke Composer::tap(double x, double y) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Stroke s;
  s.points.push_back(P(x, y));
  if (d(rng_) > 0.0) s.points.push_back(P(x + d(rng_), y + d(rng_)));
  return s;
}

BoundingBox Composer::commit(std::vector<Stroke> group, bool scale) {
  std::uniform_real_distribution<double> factor(1.0 - options_.scaleJitter, 1.0 + options_.scaleJitter);
  std::normal_distribution<double> noise(0.0, options_.noise);
  const BoundingBox box = bounding_box(group);
  const double f = scale ? factor(rng_) : 1.0;
  for (Stroke& s : group) {
    for (Point& p : s.points) {
      p.x = box.centerX() + f * (p.x - box.centerX()) + noise(rng_);
      p.y = box.centerY() + f * (p.y - box.centerY()) + noise(rng_);
      p.x = std::clamp(p.x, 0.0, width_);
      p.y = std::clamp(p.y, 0.0, height_);
    }
    clock_ += 250.0;
    for (Point& p : s.points) {
      p.t = clock_;
      clock_ += 8.0;
    }
    s.id = nextId_++;
  }
  const BoundingBox out = bounding_box(group);
  for (Stroke& s : group) strokes_.push_back(std::move(s));
  return out;
}

void Composer::staff(double stepScale, double spacingJitter, double maxSlope) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  layout_.step = 30.0 * stepScale;
  layout_.top = 0.5 * height_ - 2.0 * layout_.step + 20.0 * u(rng_);
  layout_.left = 20.0 + 5.0 * u(rng_);
  layout_.right = width_ - 20.0 + 5.0 * u(rng_);
  double y = layout_.top;
  std::vector<Stroke> lines;
  for (int i = 0; i < 5; ++i) {
    if (i > 0) y += layout_.step * (1.0 + spacingJitter * u(rng_));
    const double slope = maxSlope * u(rng_);
    const double x0 = layout_.left + 4.0 * u(rng_);
    const double x1 = layout_.right + 4.0 * u(rng_);
    const double half = 0.5 * (x1 - x0);
    const Outline line = {{P(x0, y - slope * half), P(x1, y + slope * half)}};
    lines.push_back(make(trace(line, 0.0, 0.0, 1.0)));
  }
  // Staff lines are long; only point noise applies, scale jitter would push
  // them off the canvas.
  for (Stroke& s : lines) commit({std::move(s)}, false);
}

BoundingBox Composer::treble_clef(double x) {
  const double u = layout_.step;
  return commit({make(trace(kTreble, x, layout_.top, u))});
}

BoundingBox Composer::bass_clef(double x) {
  const double u = layout_.step;
  std::vector<Stroke> group;
  group.push_back(make(trace(kBassBody, x, layout_.top, u)));
  group.push_back(tap(x + 2.1 * u, layout_.top + 0.5 * u));
  group.push_back(tap(x + 2.1 * u, layout_.top + 1.5 * u));
  return commit(std::move(group));
}

BoundingBox Composer::key_accidental(Accidental kind, int position, double left) {
  const double u = layout_.step;
  const double y = layout_.position_y(position);
  std::vector<Stroke> group;
  if (kind == Accidental::Sharp) {
    // Bars drawn first, then both posts in one stroke; the box is centred
    // on the position.
    const double oy = y - 0.325 * u;
    group.push_back(make(trace(kSharpBars, left, oy, u)));
    group.push_back(make(trace(kSharpPosts, left, oy, u)));
  } else {
    group.push_back(make(trace(kFlat, left, y - 0.7 * 2.2 * u, u)));
  }
  return commit(std::move(group));
}

BoundingBox Composer::digit(int value, double centerX, int centerPosition) {
  if (value < 0 || value > 9) throw Error(ErrorCode::OutOfRange, "digit out of range");
  const double u = layout_.step;
  const double ox = centerX - 0.6 * u;
  const double oy = layout_.position_y(centerPosition) - 0.95 * u;
  std::vector<Stroke> group{make(trace(kDigits[value], ox, oy, u))};
  return commit(std::move(group));
}

BoundingBox Composer::rest(RestKind kind, double centerX) {
  const double u = layout_.step;
  const double mid = layout_.position_y(4);
  switch (kind) {
    case RestKind::Quarter:
      return commit({make(trace(kQuarterRest, centerX - 0.55 * u, mid - 1.4 * u, u))});
    case RestKind::Eighth:
      return commit({make(trace(kEighthRest, centerX - 0.55 * u, mid - 0.9 * u, u))});
    case RestKind::Whole:
    case RestKind::Half: {
      const double oy = kind == RestKind::Whole ? layout_.position_y(6) : layout_.position_y(4) - 0.5 * u;
      std::vector<Stroke> group;
      group.push_back(make(trace(kBlockOutline, centerX - 0.6 * u, oy, u)));
      group.push_back(make(trace(kBlockFill, centerX - 0.6 * u, oy, u)));
      return commit(std::move(group));
    }
  }
  return {};
}

DrawnNote Composer::note(double centerX, int position, const NoteSpec& spec) {
  const double u = layout_.step;
  const double cy = layout_.position_y(position);
  std::uniform_real_distribution<double> start(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> spacing(options_.minSpacing, options_.maxSpacing);
  const double a = 0.62 * u;
  const double b = 0.47 * u;
  const double tilt = -0.35;
  auto ellipse = [&](double theta, double shrink) {
    const double ex = a * shrink * std::cos(theta);
    const double ey = b * shrink * std::sin(theta);
    return P(centerX + ex * std::cos(tilt) - ey * std::sin(tilt),
             cy + ex * std::sin(tilt) + ey * std::cos(tilt));
  };

  DrawnNote out;
  std::vector<Stroke> head;
  const double theta0 = start(rng_);
  if (spec.filled && spec.blobFill) {
    // Three shrinking turns.
    std::vector<Point> pts;
    const double turns = 3.0;
    const int n = static_cast<int>(turns * 2.0 * std::numbers::pi * 0.6 * a / spacing(rng_)) + 8;
    for (int i = 0; i <= n; ++i) {
      const double f = static_cast<double>(i) / n;
      pts.push_back(ellipse(theta0 + f * turns * 2.0 * std::numbers::pi, 1.0 - 0.75 * f));
    }
    head.push_back(make(std::move(pts)));
  } else {
    std::vector<Point> pts;
    const double sweep = 2.0 * std::numbers::pi + 0.2;
    const int n = static_cast<int>(sweep * 0.5 * (a + b) / spacing(rng_)) + 4;
    for (int i = 0; i <= n; ++i) pts.push_back(ellipse(theta0 + sweep * i / n, 1.0));
    head.push_back(make(std::move(pts)));
    if (spec.filled) {
      std::vector<Point> fill;
      const int passes = 5;
      for (int k = 0; k < passes; ++k) {
        const double yy = cy + (k - (passes - 1) / 2.0) * 0.16 * u;
        const double half = 0.45 * u * std::sqrt(std::max(0.0, 1.0 - std::pow((yy - cy) / b, 2.0)));
        const double x0 = k % 2 == 0 ? centerX - half : centerX + half;
        const double x1 = k % 2 == 0 ? centerX + half : centerX - half;
        fill.push_back(P(x0, yy));
        fill.push_back(P(x1, yy));
      }
      head.push_back(make(std::move(fill)));
    }
  }
  out.head = commit(std::move(head));
  const BoundingBox& h = out.head;

  if (spec.stem) {
    const bool up = position < 4;
    const double x = up ? h.maxX - 0.04 * u : h.minX + 0.04 * u;
    const double y0 = up ? h.centerY() - 0.15 * u : h.centerY() + 0.15 * u;
    const double y1 = up ? y0 - 3.3 * u : y0 + 3.3 * u;
    commit({make(trace({{P(x, y0), P(x, y1)}}, 0.0, 0.0, 1.0))});
    const Stroke& stem = strokes_.back();
    const Point freeEnd = up ? *std::min_element(stem.points.begin(), stem.points.end(),
                                                 [](auto& p, auto& q) { return p.y < q.y; })
                             : *std::max_element(stem.points.begin(), stem.points.end(),
                                                 [](auto& p, auto& q) { return p.y < q.y; });
    out.stemEnd = freeEnd;
    if (spec.flag) {
      Outline flag = kFlagDown;
      if (!up) {
        for (Point& p : flag[0]) p.y = -p.y;
      }
      commit({make(trace(flag, freeEnd.x, freeEnd.y, u))});
    }
  }

  // Ledger lines between the head and the staff.
  std::vector<int> ledgers;
  for (int p = 10; p <= position; p += 2) ledgers.push_back(p);
  for (int p = -2; p >= position; p -= 2) ledgers.push_back(p);
  for (int p : ledgers) {
    const double y = layout_.position_y(p);
    commit({make(trace({{P(h.centerX() - 0.8 * u, y), P(h.centerX() + 0.8 * u, y)}}, 0, 0, 1))});
  }

  if (spec.dot) commit({tap(h.maxX + 0.35 * u, h.centerY())});

  if (spec.accidental) {
    const double right = h.minX - 0.3 * u;
    const double y = layout_.position_y(position);
    std::vector<Stroke> group;
    if (*spec.accidental == Accidental::Sharp) {
      group.push_back(make(trace(kSharpBars, right - 1.0 * u, y - 0.325 * u, u)));
      group.push_back(make(trace(kSharpPosts, right - 1.0 * u, y - 0.325 * u, u)));
    } else {
      group.push_back(make(trace(kFlat, right - 0.75 * u, y - 0.7 * 2.2 * u, u)));
    }
    commit(std::move(group));
  }
  return out;
}

void Composer::beam(const DrawnNote& a, const DrawnNote& b) {
  if (!a.stemEnd || !b.stemEnd) throw Error(ErrorCode::OutOfRange, "beam needs two stems");
  commit({make(trace({{*a.stemEnd, *b.stemEnd}}, 0.0, 0.0, 1.0))});
}

BoundingBox Composer::bar(double x, BarKind kind) {
  const double u = layout_.step;
  const double y0 = layout_.line_y(0) - 0.1 * u;
  const double y1 = layout_.line_y(4) + 0.1 * u;
  BoundingBox box = commit({make(trace({{P(x, y0), P(x, y1)}}, 0.0, 0.0, 1.0))});
  if (kind == BarKind::Double) {
    box = box.merged(
        commit({make(trace({{P(x + 0.3 * u, y0), P(x + 0.3 * u, y1)}}, 0.0, 0.0, 1.0))}));
  }
  return box;
}

void Composer::glyph(const std::string& label, double x) {
  if (label == "treble_clef") {
    treble_clef(x);
  } else if (label == "bass_clef") {
    bass_clef(x);
  } else if (label == "sharp") {
    key_accidental(Accidental::Sharp, 6, x);
  } else if (label == "flat") {
    key_accidental(Accidental::Flat, 4, x);
  } else if (label == "quarter_rest") {
    rest(RestKind::Quarter, x);
  } else if (label == "eighth_rest") {
    rest(RestKind::Eighth, x);
  } else if (label.size() == 7 && label.rfind("digit_", 0) == 0 && label[6] >= '0' && label[6] <= '9') {
    digit(label[6] - '0', x, 6);
  } else {
    throw Error(ErrorCode::OutOfRange, "no drawing for template class " + label);
  }
}

Sketch Composer::sketch() const {
  Sketch s;
  s.width = width_;
  s.height = height_;
  s.strokes = strokes_;
  return s;
}

}  // namespace notesketch::synth
