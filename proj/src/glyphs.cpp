#include "notesketch/glyphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "notesketch/error.hpp"

namespace notesketch {

std::optional<double> RecognitionContext::first_body_x() const {
  std::optional<double> x;
  auto take = [&x](double v) { x = x ? std::min(*x, v) : v; };
  for (const HeadInfo& h : heads) take(h.bbox.minX);
  for (const Glyph& g : rests) take(g.bbox.minX);
  for (const Glyph& g : bars) take(g.bbox.minX);
  return x;
}

const HeadInfo* RecognitionContext::head(int id) const {
  for (const HeadInfo& h : heads) {
    if (h.id == id) return &h;
  }
  return nullptr;
}

namespace {

std::vector<int> ids_of(std::span<const Stroke> strokes) {
  std::vector<int> ids;
  for (const Stroke& s : strokes) ids.push_back(s.id);
  return ids;
}

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

Glyph make_glyph(GlyphKind kind, std::span<const Stroke> strokes) {
  Glyph g;
  g.kind = kind;
  g.bbox = bounding_box(strokes);
  g.strokeIds = ids_of(strokes);
  return g;
}

double box_point_distance(const BoundingBox& box, const Point& p) {
  const double dx = std::max({box.minX - p.x, 0.0, p.x - box.maxX});
  const double dy = std::max({box.minY - p.y, 0.0, p.y - box.maxY});
  return std::hypot(dx, dy);
}

int digit_value(const std::string& label) { return label.back() - '0'; }

// Anchor height of an accidental: sharps are centred on their line or space,
// a flat's bowl sits in its lower part.
double accidental_anchor_y(GlyphKind kind, const BoundingBox& box, const RecognitionConfig& config) {
  if (kind == GlyphKind::Flat) return box.minY + config.flatAnchor * box.height();
  return box.centerY();
}

}  // namespace

double containment(const Stroke& stroke, const BoundingBox& box, double margin) {
  if (stroke.points.empty()) return 0.0;
  std::size_t inside = 0;
  for (const Point& p : stroke.points) {
    if (box.contains(p, margin)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(stroke.points.size());
}

CircleTest circle_test(const Stroke& stroke, const RecognitionConfig& config) {
  CircleTest t;
  const BoundingBox box = bounding_box(stroke.points);
  const double w = box.width();
  const double h = box.height();
  const double length = path_length(stroke);
  if (w <= 0.0 || h <= 0.0 || length <= 0.0) return t;
  const double circumference = 2.0 * std::numbers::pi * (w + h) / 4.0;
  t.inkRatio = length / circumference;
  t.roundish = std::min(w, h) / std::max(w, h) >= config.headMinAspect;
  t.closed = distance(stroke.points.front(), stroke.points.back()) <= config.headClosure * length;
  return t;
}

std::vector<int> find_corners(const Stroke& stroke, const RecognitionConfig& config) {
  const int n = kTemplatePoints;
  const PointSet pts = resample(stroke, n);
  const int w = std::max(1, config.strawWindow);
  if (n <= 2 * w) return {0, n - 1};

  std::vector<double> straws(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<double> sorted;
  for (int i = w; i < n - w; ++i) {
    straws[i] = distance(pts[i - w], pts[i + w]);
    sorted.push_back(straws[i]);
  }
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double threshold = sorted[sorted.size() / 2] * config.strawThreshold;

  auto is_line = [&](int a, int b) {
    if (b - a < 2) return true;
    const std::span<const Point> run(pts.data() + a, static_cast<std::size_t>(b - a + 1));
    return straightness(run) >= config.segmentStraightness;
  };

  std::vector<int> corners{0};
  for (int i = w; i < n - w; ++i) {
    if (straws[i] >= threshold) continue;
    int best = i;
    while (i < n - w && straws[i] < threshold) {
      if (straws[i] < straws[best]) best = i;
      ++i;
    }
    corners.push_back(best);
  }
  corners.push_back(n - 1);

  // Split segments that are not lines at their smallest straw.
  for (int guard = 0; guard < n; ++guard) {
    bool changed = false;
    for (std::size_t k = 1; k < corners.size(); ++k) {
      const int a = corners[k - 1];
      const int b = corners[k];
      if (is_line(a, b)) continue;
      const int lo = a + (b - a) / 4;
      const int hi = b - (b - a) / 4;
      int best = -1;
      for (int i = std::max(lo, w); i <= std::min(hi, n - w - 1); ++i) {
        if (i <= a || i >= b) continue;
        if (best < 0 || straws[i] < straws[best]) best = i;
      }
      if (best < 0) continue;
      corners.insert(corners.begin() + static_cast<std::ptrdiff_t>(k), best);
      changed = true;
      break;
    }
    if (!changed) break;
  }

  // Drop corners whose neighbours form a single line.
  for (std::size_t k = 1; k + 1 < corners.size();) {
    if (is_line(corners[k - 1], corners[k + 1])) {
      corners.erase(corners.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      ++k;
    }
  }
  return corners;
}

std::optional<Glyph> classify_clef(std::span<const Stroke> strokes, const RecognitionContext& ctx,
                                   const GlyphMatcher& matcher, const RecognitionConfig& config) {
  if (ctx.clef || strokes.empty() || strokes.size() > 3) return std::nullopt;
  const StaffModel& staff = ctx.staff;
  const double step = staff.step;
  const BoundingBox box = bounding_box(strokes);
  const double h = box.height() / step;

  const bool bassShape = strokes.size() == 3 && h <= config.bassMaxHeight;
  const bool trebleShape =
      strokes.size() <= 2 && within(h, config.trebleMinHeight, config.trebleMaxHeight);
  if (!bassShape && !trebleShape) return std::nullopt;

  auto m = matcher.matching_check(strokes, labels::kClefs, config);
  if (!m) return std::nullopt;

  if (m->label == "bass_clef") {
    if (!bassShape) return std::nullopt;
    // Body overlaps most of the top three steps of the staff.
    const double band = 3.0 * step;
    if (overlap(box.minY, box.maxY, staff.top(), staff.top() + band) < 0.75 * band) {
      return std::nullopt;
    }
    if (box.maxY > staff.bottom() + step) return std::nullopt;
    // The two smallest strokes are the dots; they straddle the fourth line.
    std::vector<BoundingBox> parts;
    for (const Stroke& s : strokes) parts.push_back(bounding_box(s.points));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.diagonal() < b.diagonal(); });
    const double line4 = staff.position_y(6);
    const double y1 = parts[0].centerY();
    const double y2 = parts[1].centerY();
    if (!((y1 < line4) != (y2 < line4))) return std::nullopt;
    if (std::abs(y1 - line4) > step || std::abs(y2 - line4) > step) return std::nullopt;
    if (parts[0].diagonal() > 0.5 * parts[2].diagonal()) return std::nullopt;
    Glyph g = make_glyph(GlyphKind::BassClef, strokes);
    g.score = m->score;
    return g;
  }

  if (!trebleShape) return std::nullopt;
  const double slack = 0.5 * step;
  if (box.minY > staff.top() + slack || box.maxY < staff.bottom() - slack) return std::nullopt;
  Glyph g = make_glyph(GlyphKind::TrebleClef, strokes);
  g.score = m->score;
  return g;
}

std::optional<Glyph> classify_accidental_key(std::span<const Stroke> strokes,
                                             const RecognitionContext& ctx,
                                             const GlyphMatcher& matcher,
                                             const RecognitionConfig& config) {
  if (!ctx.clef || strokes.empty() || strokes.size() > 3) return std::nullopt;
  const double step = ctx.staff.step;
  const BoundingBox box = bounding_box(strokes);
  if (!within(box.height() / step, config.accidentalMinHeight, config.accidentalMaxHeight)) {
    return std::nullopt;
  }

  // Key signatures follow the clef and precede the time signature and body.
  const BoundingBox& clef = ctx.clef->bbox;
  if (box.minX < clef.maxX - 0.25 * step) return std::nullopt;
  double reference = clef.maxX;
  for (const Glyph& k : ctx.keyAccidentals) reference = std::max(reference, k.bbox.maxX);
  if (box.minX - reference > config.keyMaxGap * step) return std::nullopt;
  if (auto body = ctx.first_body_x(); body && box.maxX >= *body) return std::nullopt;
  for (const Glyph& d : ctx.digits) {
    if (box.maxX >= d.bbox.minX) return std::nullopt;
  }

  auto m = matcher.matching_check(strokes, labels::kAccidentals, config);
  if (!m) return std::nullopt;
  const GlyphKind kind = m->label == "sharp" ? GlyphKind::Sharp : GlyphKind::Flat;
  const int position = snap_position(accidental_anchor_y(kind, box, config), ctx.staff);
  if (position < -2 || position > 10) return std::nullopt;
  // Directly in front of a head on the same position it belongs to that note.
  for (const HeadInfo& h : ctx.heads) {
    const double gap = h.bbox.minX - box.maxX;
    if (h.position == position && gap >= -0.25 * step && gap <= config.accidentalMaxGap * step) {
      return std::nullopt;
    }
  }

  Glyph g = make_glyph(kind, strokes);
  g.position = position;
  g.score = m->score;
  return g;
}

FusionResult fuse_digits(const Glyph& a, const Glyph& b, const StaffModel& staff,
                         const RecognitionConfig& config) {
  FusionResult out;
  const double step = staff.step;
  if (std::abs(a.bbox.centerX() - b.bbox.centerX()) > config.digitAlignment * step) return out;
  const Glyph& upper = a.bbox.centerY() < b.bbox.centerY() ? a : b;
  const Glyph& lower = &upper == &a ? b : a;
  const double mid = staff.middle();
  if (!(upper.bbox.centerY() < mid && lower.bbox.centerY() > mid)) return out;
  const double span = std::max(a.bbox.maxY, b.bbox.maxY) - std::min(a.bbox.minY, b.bbox.minY);
  if (span < config.timeSignatureMinSpan * step) return out;

  const int den = lower.digit;
  if (den != 1 && den != 2 && den != 4 && den != 8) {
    out.diagnostic = "invalid time signature denominator " + std::to_string(den);
    return out;
  }
  if (upper.digit < 1) {
    out.diagnostic = "invalid time signature numerator " + std::to_string(upper.digit);
    return out;
  }
  TimeSignature ts;
  ts.numerator = upper.digit;
  ts.denominator = den;
  ts.bbox = a.bbox.merged(b.bbox);
  ts.numeratorGlyph = upper.id;
  ts.denominatorGlyph = lower.id;
  out.timeSignature = ts;
  return out;
}

std::optional<DigitOutcome> classify_beat_digits(std::span<const Stroke> strokes,
                                                 const RecognitionContext& ctx,
                                                 const GlyphMatcher& matcher,
                                                 const RecognitionConfig& config) {
  if (strokes.empty() || strokes.size() > 2 || ctx.hasTimeSignature) return std::nullopt;
  const StaffModel& staff = ctx.staff;
  const double step = staff.step;
  const BoundingBox box = bounding_box(strokes);
  if (!within(box.height() / step, config.digitMinHeight, config.digitMaxHeight)) {
    return std::nullopt;
  }
  // A digit fills the upper or the lower half of the staff.
  const double tolerance = config.digitHalfTolerance * step;
  const bool upperHalf = std::abs(box.centerY() - staff.position_y(6)) <= tolerance;
  const bool lowerHalf = std::abs(box.centerY() - staff.position_y(2)) <= tolerance;
  if (!upperHalf && !lowerHalf) return std::nullopt;
  if (ctx.clef && box.minX < ctx.clef->bbox.maxX - 0.25 * step) return std::nullopt;
  if (auto body = ctx.first_body_x(); body && box.maxX >= *body) return std::nullopt;

  auto m = matcher.matching_check(strokes, labels::kDigits, config);
  if (!m) return std::nullopt;

  DigitOutcome out;
  out.digit = make_glyph(GlyphKind::Digit, strokes);
  out.digit.digit = digit_value(m->label);
  out.digit.score = m->score;
  for (const Glyph& other : ctx.pendingDigits) {
    FusionResult f = fuse_digits(out.digit, other, staff, config);
    if (f.timeSignature) {
      out.timeSignature = f.timeSignature;
      out.partner = other.id;
      out.diagnostic.reset();
      break;
    }
    if (f.diagnostic && !out.diagnostic) out.diagnostic = f.diagnostic;
  }
  return out;
}

namespace {

std::optional<Glyph> block_rest(const Stroke& outline, const Stroke* fill,
                                const RecognitionContext& ctx, const RecognitionConfig& config) {
  const StaffModel& staff = ctx.staff;
  const double step = staff.step;
  const BoundingBox box = bounding_box(outline.points);
  if (!within(box.width() / step, config.blockRestMinWidth, config.blockRestMaxWidth)) {
    return std::nullopt;
  }
  if (box.height() / step > config.blockRestMaxHeight || box.height() <= 0.0) return std::nullopt;

  if (fill != nullptr) {
    const int segments = static_cast<int>(find_corners(outline, config).size()) - 1;
    if (segments < 3 || segments > 4) return std::nullopt;
    if (containment(*fill, box, config.containmentMargin * step) < config.fillContainment) {
      return std::nullopt;
    }
  } else {
    // A single dense closed blob.
    const double length = path_length(outline);
    const double gap = distance(outline.points.front(), outline.points.back());
    if (gap > 0.3 * std::max(box.width(), box.height())) return std::nullopt;
    if (length < 2.0 * (box.width() + box.height())) return std::nullopt;
  }

  // Both rests occupy the third space: the whole rest hangs from the fourth
  // line, the half rest sits on the middle line.
  const double line4 = staff.position_y(6);
  const double line3 = staff.position_y(4);
  const double slack = 0.35 * step;
  if (box.minY < line4 - slack || box.maxY > line3 + slack) return std::nullopt;
  const double hang = std::abs(box.minY - line4);
  const double sit = std::abs(box.maxY - line3);
  if (std::min(hang, sit) > 0.3 * step) return std::nullopt;

  Glyph g;
  g.kind = hang <= sit ? GlyphKind::WholeRest : GlyphKind::HalfRest;
  g.bbox = fill != nullptr ? box.merged(bounding_box(fill->points)) : box;
  g.strokeIds = {outline.id};
  if (fill != nullptr) g.strokeIds.push_back(fill->id);
  g.position = g.kind == GlyphKind::WholeRest ? 6 : 4;
  return g;
}

}  // namespace

std::optional<Glyph> classify_rest(std::span<const Stroke> strokes, const RecognitionContext& ctx,
                                   const GlyphMatcher& matcher, const RecognitionConfig& config) {
  if (strokes.empty() || strokes.size() > 2) return std::nullopt;
  const StaffModel& staff = ctx.staff;
  const double step = staff.step;

  if (strokes.size() == 2) {
    for (int k = 0; k < 2; ++k) {
      if (path_length(strokes[k]) <= 0.0) continue;
      if (auto g = block_rest(strokes[k], &strokes[1 - k], ctx, config)) return g;
    }
  } else if (path_length(strokes[0]) > 0.0) {
    if (auto g = block_rest(strokes[0], nullptr, ctx, config)) return g;
  }

  const BoundingBox box = bounding_box(strokes);
  if (!within(box.height() / step, config.restMinHeight, config.restMaxHeight)) return std::nullopt;
  if (std::abs(box.centerY() - staff.middle()) > config.restCenterTolerance * step) {
    return std::nullopt;
  }
  // Rests are drawn with turns; a straight line is a stem or a bar.
  for (const Stroke& s : strokes) {
    if (straightness(s.points) >= config.componentStraightness) return std::nullopt;
  }
  // Strokes hanging off a stem end are flags, not rests.
  for (const StemInfo& stem : ctx.stems) {
    for (const Stroke& s : strokes) {
      for (const Point& p : {s.points.front(), s.points.back()}) {
        if (distance(p, stem.freeEnd) <= config.attachDistance * step) return std::nullopt;
      }
    }
  }
  auto m = matcher.matching_check(strokes, labels::kRests, config);
  if (!m) return std::nullopt;
  Glyph g = make_glyph(m->label == "quarter_rest" ? GlyphKind::QuarterRest : GlyphKind::EighthRest,
                       strokes);
  g.score = m->score;
  g.position = 4;
  return g;
}

namespace {

bool head_size_ok(const BoundingBox& box, const RecognitionContext& ctx,
                  const RecognitionConfig& config) {
  return within(box.height() / ctx.staff.step, config.headMinHeight, config.headMaxHeight);
}

bool is_outline_head(const Stroke& s, const RecognitionConfig& config) {
  const CircleTest t = circle_test(s, config);
  return t.closed && t.roundish && std::abs(t.inkRatio - 1.0) <= config.circumferenceTolerance;
}

}  // namespace

std::optional<Glyph> classify_note_head(std::span<const Stroke> strokes,
                                        const RecognitionContext& ctx,
                                        const RecognitionConfig& config) {
  if (strokes.empty() || strokes.size() > 2) return std::nullopt;
  const double step = ctx.staff.step;

  std::optional<Glyph> g;
  if (strokes.size() == 1) {
    const Stroke& s = strokes[0];
    const BoundingBox box = bounding_box(s.points);
    if (!head_size_ok(box, ctx, config)) return std::nullopt;
    if (is_outline_head(s, config)) {
      g = make_glyph(GlyphKind::NoteHeadEmpty, strokes);
    } else {
      const CircleTest t = circle_test(s, config);
      const double aspect = std::min(box.width(), box.height()) / std::max(box.width(), box.height());
      if (aspect >= config.blobMinAspect && t.inkRatio >= config.blobMinInk) {
        g = make_glyph(GlyphKind::NoteHeadFilled, strokes);
      }
    }
  } else {
    for (int k = 0; k < 2 && !g; ++k) {
      const Stroke& outline = strokes[k];
      const Stroke& fill = strokes[1 - k];
      const BoundingBox box = bounding_box(outline.points);
      if (!head_size_ok(box, ctx, config) || !is_outline_head(outline, config)) continue;
      if (containment(fill, box, config.containmentMargin * step) < config.fillContainment) continue;
      g = make_glyph(GlyphKind::NoteHeadFilled, strokes);
      g->bbox = box;
    }
  }
  if (!g) return std::nullopt;
  g->position = snap_position(g->bbox.centerY(), ctx.staff);
  return g;
}

std::optional<int> classify_head_fill(const Stroke& stroke, const RecognitionContext& ctx,
                                      const RecognitionConfig& config) {
  const double step = ctx.staff.step;
  const BoundingBox box = bounding_box(stroke.points);
  for (const HeadInfo& h : ctx.heads) {
    if (h.filled) continue;
    if (box.width() > h.bbox.width() + 2 * config.containmentMargin * step) continue;
    if (containment(stroke, h.bbox, config.containmentMargin * step) >= config.fillContainment) {
      return h.id;
    }
  }
  return std::nullopt;
}

std::optional<BarOutcome> classify_measure_bar(const Stroke& stroke, const RecognitionContext& ctx,
                                               const RecognitionConfig& config) {
  if (stroke.points.size() < 2) return std::nullopt;
  const StaffModel& staff = ctx.staff;
  const double step = staff.step;
  const Point& a = stroke.points.front();
  const Point& b = stroke.points.back();
  const double dy = std::abs(b.y - a.y);
  if (dy <= 0.0 || fitted_slant(stroke.points) >= config.barMaxSlant) return std::nullopt;
  if (straightness(stroke.points) < config.barStraightness) return std::nullopt;

  const BoundingBox box = bounding_box(stroke.points);
  const double slack = config.barSpanSlack * step;
  if (std::abs(box.minY - staff.top()) > slack) return std::nullopt;
  if (std::abs(box.maxY - staff.bottom()) > slack) return std::nullopt;
  // A line starting at a note head is that note's stem.
  for (const HeadInfo& h : ctx.heads) {
    if (box_point_distance(h.bbox, a) <= config.attachDistance * step ||
        box_point_distance(h.bbox, b) <= config.attachDistance * step) {
      return std::nullopt;
    }
  }

  BarOutcome out;
  out.bar.kind = GlyphKind::BarSingle;
  out.bar.bbox = box;
  out.bar.strokeIds = {stroke.id};
  for (const Glyph& existing : ctx.bars) {
    if (existing.kind != GlyphKind::BarSingle) continue;
    if (std::abs(existing.bbox.centerX() - box.centerX()) <= config.doubleBarGap * step) {
      out.bar.kind = GlyphKind::BarDouble;
      out.bar.bbox = existing.bbox.merged(box);
      out.bar.strokeIds = existing.strokeIds;
      out.bar.strokeIds.push_back(stroke.id);
      out.fusedWith = existing.id;
      break;
    }
  }
  return out;
}

}  // namespace notesketch
