#include "notesketch/notes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace notesketch {

std::string pitch_name(Clef clef, int position) {
  static constexpr char kLetters[] = {'C', 'D', 'E', 'F', 'G', 'A', 'B'};
  // Diatonic index = octave * 7 + letter index of the bottom-line pitch.
  const int base = clef == Clef::Treble ? 4 * 7 + 2 : 2 * 7 + 4;
  const int index = base + position;
  const int octave = index >= 0 ? index / 7 : -((-index + 6) / 7);
  const int letter = index - octave * 7;
  return std::string(1, kLetters[letter]) + std::to_string(octave);
}

std::optional<double> duration_beats(const NoteShape& shape) {
  if (shape.stems > 1 || shape.flags > 1 || shape.dots > 1) return std::nullopt;
  const bool eighthMark = shape.flags > 0 || shape.beams > 0;
  double beats = 0.0;
  if (!shape.filled) {
    if (eighthMark) return std::nullopt;
    beats = shape.stems == 0 ? 4.0 : 2.0;
  } else {
    if (shape.stems == 0) return std::nullopt;
    beats = eighthMark ? 0.5 : 1.0;
  }
  if (shape.dots == 1) beats *= 1.5;
  return beats;
}

namespace {

NoteComponent make_component(ComponentKind kind, int anchor, std::span<const Stroke> strokes) {
  NoteComponent c;
  c.kind = kind;
  c.anchor = anchor;
  c.bbox = bounding_box(strokes);
  for (const Stroke& s : strokes) c.strokeIds.push_back(s.id);
  return c;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

double endpoint_slant(const Stroke& s) {
  const double dx = std::abs(s.points.back().x - s.points.front().x);
  const double dy = std::abs(s.points.back().y - s.points.front().y);
  return dy > 0.0 ? dx / dy : std::numeric_limits<double>::infinity();
}

double endpoint_slope(const Stroke& s) {
  const double dx = std::abs(s.points.back().x - s.points.front().x);
  const double dy = std::abs(s.points.back().y - s.points.front().y);
  return dx > 0.0 ? dy / dx : std::numeric_limits<double>::infinity();
}

double accidental_anchor_y(Accidental kind, const BoundingBox& box, const RecognitionConfig& config) {
  if (kind == Accidental::Flat) return box.minY + config.flatAnchor * box.height();
  return box.centerY();
}

}  // namespace

std::optional<NoteComponent> classify_stem(const Stroke& stroke, const RecognitionContext& ctx,
                                           const RecognitionConfig& config) {
  if (stroke.points.size() < 2) return std::nullopt;
  const double step = ctx.staff.step;
  if (straightness(stroke.points) < config.componentStraightness) return std::nullopt;
  if (endpoint_slant(stroke) >= config.stemMaxSlant) return std::nullopt;
  const double length = distance(stroke.points.front(), stroke.points.back());
  if (!within(length / step, config.stemMinLength, config.stemMaxLength)) return std::nullopt;

  const Point& first = stroke.points.front();
  const Point& last = stroke.points.back();
  const Point& lower = first.y > last.y ? first : last;
  const Point& upper = first.y > last.y ? last : first;

  // Stems rise from a head's right side or fall from its left side.
  const HeadInfo* best = nullptr;
  double bestDistance = config.attachDistance * step;
  bool bestRight = true;
  for (const HeadInfo& h : ctx.heads) {
    if (h.hasStem) continue;
    const BoundingBox& b = h.bbox;
    const double right = point_segment_distance(lower, {b.maxX, b.minY, std::nullopt}, {b.maxX, b.centerY(), std::nullopt});
    const double left = point_segment_distance(upper, {b.minX, b.centerY(), std::nullopt}, {b.minX, b.maxY, std::nullopt});
    if (right <= bestDistance) {
      best = &h;
      bestDistance = right;
      bestRight = true;
    }
    if (left <= bestDistance) {
      best = &h;
      bestDistance = left;
      bestRight = false;
    }
  }
  if (best == nullptr) return std::nullopt;
  NoteComponent c = make_component(ComponentKind::Stem, best->id, std::span(&stroke, 1));
  c.freeEnd = bestRight ? upper : lower;
  return c;
}

std::optional<NoteComponent> classify_flag(const Stroke& stroke, const RecognitionContext& ctx,
                                           const RecognitionConfig& config) {
  if (stroke.points.size() < 2) return std::nullopt;
  const double step = ctx.staff.step;
  const StemInfo* stem = nullptr;
  double bestDistance = config.attachDistance * step;
  for (const StemInfo& s : ctx.stems) {
    for (const Point& p : {stroke.points.front(), stroke.points.back()}) {
      const double d = distance(p, s.freeEnd);
      if (d <= bestDistance) {
        stem = &s;
        bestDistance = d;
      }
    }
  }
  if (stem == nullptr) return std::nullopt;

  const BoundingBox box = bounding_box(stroke.points);
  const double w = box.width();
  const double h = box.height();
  const double diagonal = std::hypot(w, h);
  const double length = path_length(stroke);
  if (length < diagonal * (1.0 - config.flagSlack)) return std::nullopt;
  if (length > (w + h) * (1.0 + config.flagSlack)) return std::nullopt;
  const double slope = endpoint_slope(stroke);
  if (!within(slope, config.flagMinSlope, config.flagMaxSlope)) return std::nullopt;
  if (!within(h / step, config.flagMinHeight, config.flagMaxHeight)) return std::nullopt;
  return make_component(ComponentKind::Flag, stem->id, std::span(&stroke, 1));
}

std::optional<NoteComponent> classify_dot(const Stroke& stroke, const RecognitionContext& ctx,
                                          const RecognitionConfig& config) {
  const double step = ctx.staff.step;
  const BoundingBox box = bounding_box(stroke.points);
  const bool tap = static_cast<int>(stroke.points.size()) <= config.dotMaxPoints;
  if (!tap && box.diagonal() >= config.dotMaxDiagonal * step) return std::nullopt;
  const Point center{box.centerX(), box.centerY(), std::nullopt};

  const HeadInfo* best = nullptr;
  double bestDistance = config.attachDistance * step;
  for (const HeadInfo& h : ctx.heads) {
    if (center.x <= h.bbox.maxX) continue;
    const Point a{h.bbox.maxX, h.bbox.centerY(), std::nullopt};
    const Point b{h.bbox.maxX + 0.5 * step, h.bbox.centerY(), std::nullopt};
    const double d = point_segment_distance(center, a, b);
    if (d <= bestDistance) {
      best = &h;
      bestDistance = d;
    }
  }
  if (best == nullptr) return std::nullopt;
  return make_component(ComponentKind::Dot, best->id, std::span(&stroke, 1));
}

std::optional<NoteComponent> classify_beam(const Stroke& stroke, const RecognitionContext& ctx,
                                           const RecognitionConfig& config) {
  if (stroke.points.size() < 2) return std::nullopt;
  const double step = ctx.staff.step;
  if (straightness(stroke.points) < config.componentStraightness) return std::nullopt;
  auto nearest_stem = [&](const Point& p, int exclude) -> const StemInfo* {
    const StemInfo* best = nullptr;
    double bestDistance = config.beamEndDistance * step;
    for (const StemInfo& s : ctx.stems) {
      if (s.id == exclude) continue;
      const double d = distance(p, s.freeEnd);
      if (d <= bestDistance) {
        best = &s;
        bestDistance = d;
      }
    }
    return best;
  };
  const StemInfo* a = nearest_stem(stroke.points.front(), -1);
  if (a == nullptr) return std::nullopt;
  const StemInfo* b = nearest_stem(stroke.points.back(), a->id);
  if (b == nullptr) return std::nullopt;
  NoteComponent c = make_component(ComponentKind::Beam, a->id, std::span(&stroke, 1));
  c.secondAnchor = b->id;
  return c;
}

std::optional<NoteComponent> classify_ledger_line(const Stroke& stroke,
                                                  const RecognitionContext& ctx,
                                                  const RecognitionConfig& config) {
  if (stroke.points.size() < 2) return std::nullopt;
  const StaffModel& staff = ctx.staff;
  const double step = staff.step;
  if (straightness(stroke.points) < config.ledgerStraightness) return std::nullopt;
  if (fitted_slope(stroke.points) >= config.ledgerMaxSlope) return std::nullopt;
  const double length = distance(stroke.points.front(), stroke.points.back());
  if (!within(length / step, config.ledgerMinLength, config.ledgerMaxLength)) return std::nullopt;

  const BoundingBox box = bounding_box(stroke.points);
  const double y = box.centerY();
  const int position = snap_position(y, staff);
  if (position % 2 != 0 || (position > -2 && position < 10)) return std::nullopt;
  if (std::abs(y - staff.position_y(position)) > config.ledgerSnap * step) return std::nullopt;

  // The head sits on this ledger or beyond it, away from the staff.
  const HeadInfo* best = nullptr;
  double bestDistance = std::numeric_limits<double>::infinity();
  for (const HeadInfo& h : ctx.heads) {
    const bool beyond = position > 0 ? h.position >= position - 1 : h.position <= position + 1;
    if (!beyond) continue;
    const double cx = h.bbox.centerX();
    if (cx < box.minX - config.attachDistance * step || cx > box.maxX + config.attachDistance * step) {
      continue;
    }
    const double d = std::abs(h.bbox.centerY() - y);
    if (d < bestDistance) {
      best = &h;
      bestDistance = d;
    }
  }
  if (best == nullptr) return std::nullopt;
  return make_component(ComponentKind::LedgerLine, best->id, std::span(&stroke, 1));
}

std::optional<NoteComponent> classify_note_accidental(std::span<const Stroke> strokes,
                                                      const RecognitionContext& ctx,
                                                      const GlyphMatcher& matcher,
                                                      const RecognitionConfig& config) {
  if (strokes.empty() || strokes.size() > 3) return std::nullopt;
  const double step = ctx.staff.step;
  const BoundingBox box = bounding_box(strokes);
  if (!within(box.height() / step, config.accidentalMinHeight, config.accidentalMaxHeight)) {
    return std::nullopt;
  }
  // Cheap proximity test before the template match.
  bool nearHead = false;
  for (const HeadInfo& h : ctx.heads) {
    const double gap = h.bbox.minX - box.maxX;
    if (gap >= -0.25 * step && gap <= config.accidentalMaxGap * step) nearHead = true;
  }
  if (!nearHead) return std::nullopt;

  auto m = matcher.matching_check(strokes, labels::kAccidentals, config);
  if (!m) return std::nullopt;
  const Accidental kind = m->label == "sharp" ? Accidental::Sharp : Accidental::Flat;
  const int position = snap_position(accidental_anchor_y(kind, box, config), ctx.staff);

  const HeadInfo* best = nullptr;
  double bestGap = std::numeric_limits<double>::infinity();
  for (const HeadInfo& h : ctx.heads) {
    if (h.position != position) continue;
    const double gap = h.bbox.minX - box.maxX;
    if (gap < -0.25 * step || gap > config.accidentalMaxGap * step) continue;
    const bool taken = std::any_of(ctx.components.begin(), ctx.components.end(), [&](const auto& c) {
      return c.anchor == h.id && (c.kind == ComponentKind::AccidentalSharp ||
                                  c.kind == ComponentKind::AccidentalFlat);
    });
    if (taken) continue;
    if (gap < bestGap) {
      best = &h;
      bestGap = gap;
    }
  }
  if (best == nullptr) return std::nullopt;
  return make_component(
      kind == Accidental::Sharp ? ComponentKind::AccidentalSharp : ComponentKind::AccidentalFlat,
      best->id, strokes);
}

std::optional<NoteComponent> classify_component(std::span<const Stroke> strokes,
                                                const RecognitionContext& ctx,
                                                const GlyphMatcher& matcher,
                                                const RecognitionConfig& config) {
  if (ctx.heads.empty() || strokes.empty()) return std::nullopt;
  if (strokes.size() == 1) {
    const Stroke& s = strokes[0];
    if (auto c = classify_stem(s, ctx, config)) return c;
    if (auto c = classify_beam(s, ctx, config)) return c;
    if (auto c = classify_flag(s, ctx, config)) return c;
    if (auto c = classify_dot(s, ctx, config)) return c;
  }
  if (auto c = classify_note_accidental(strokes, ctx, matcher, config)) return c;
  if (strokes.size() == 1) {
    if (auto c = classify_ledger_line(strokes[0], ctx, config)) return c;
  }
  return std::nullopt;
}

std::vector<Measure> partition_measures(std::vector<TimedElement> elements,
                                        std::vector<double> barXs, double left, double right) {
  std::sort(barXs.begin(), barXs.end());
  std::stable_sort(elements.begin(), elements.end(),
                   [](const auto& a, const auto& b) { return a.x < b.x; });
  std::vector<double> bounds{left};
  bounds.insert(bounds.end(), barXs.begin(), barXs.end());
  bounds.push_back(right);

  std::vector<Measure> measures;
  for (std::size_t r = 0; r + 1 < bounds.size(); ++r) {
    Measure m;
    m.index = static_cast<int>(measures.size()) + 1;
    m.startX = bounds[r];
    m.endX = bounds[r + 1];
    for (const TimedElement& e : elements) {
      if (e.x > m.startX && e.x < m.endX) {
        m.symbolIds.push_back(e.id);
        m.beatTotal += e.beats;
      }
    }
    const bool trailing = r + 2 == bounds.size();
    if (m.symbolIds.empty() && trailing) continue;
    measures.push_back(std::move(m));
  }
  return measures;
}

NoteShape shape_of(const Glyph& head, std::span<const NoteComponent> components) {
  NoteShape shape;
  shape.filled = head.kind == GlyphKind::NoteHeadFilled;
  std::vector<int> stems;
  for (const NoteComponent& c : components) {
    if (c.anchor != head.id) continue;
    if (c.kind == ComponentKind::Stem) {
      ++shape.stems;
      stems.push_back(c.id);
    } else if (c.kind == ComponentKind::Dot) {
      ++shape.dots;
    }
  }
  for (const NoteComponent& c : components) {
    const bool onStem = std::find(stems.begin(), stems.end(), c.anchor) != stems.end() ||
                        (c.secondAnchor && std::find(stems.begin(), stems.end(), *c.secondAnchor) !=
                                               stems.end());
    if (!onStem) continue;
    if (c.kind == ComponentKind::Flag) ++shape.flags;
    if (c.kind == ComponentKind::Beam) ++shape.beams;
  }
  return shape;
}

Assembly assemble_notes_and_measures(std::span<const Glyph> glyphs,
                                     std::span<const NoteComponent> components,
                                     std::optional<Clef> clef,
                                     const std::optional<StaffModel>& staff) {
  Assembly out;
  std::vector<TimedElement> timed;
  std::vector<double> barXs;
  for (const Glyph& g : glyphs) {
    if (is_note_head(g.kind)) {
      Note n;
      n.headId = g.id;
      n.position = g.position.value_or(0);
      n.x = g.bbox.centerX();
      if (clef) n.pitch = pitch_name(*clef, n.position);
      n.durationBeats = duration_beats(shape_of(g, components));
      std::vector<int> stems;
      for (const NoteComponent& c : components) {
        if (c.anchor == g.id) {
          n.componentIds.push_back(c.id);
          if (c.kind == ComponentKind::Stem) stems.push_back(c.id);
          if (c.kind == ComponentKind::AccidentalSharp) n.accidental = Accidental::Sharp;
          if (c.kind == ComponentKind::AccidentalFlat) n.accidental = Accidental::Flat;
        }
      }
      for (const NoteComponent& c : components) {
        const bool onStem =
            std::find(stems.begin(), stems.end(), c.anchor) != stems.end() ||
            (c.secondAnchor && std::find(stems.begin(), stems.end(), *c.secondAnchor) != stems.end());
        if (onStem) n.componentIds.push_back(c.id);
      }
      timed.push_back({g.id, n.x, n.durationBeats.value_or(0.0)});
      out.notes.push_back(std::move(n));
    } else if (auto rest = rest_kind_of(g.kind)) {
      timed.push_back({g.id, g.bbox.centerX(), rest_beats(*rest)});
    } else if (is_bar(g.kind)) {
      barXs.push_back(g.bbox.centerX());
    }
  }
  std::stable_sort(out.notes.begin(), out.notes.end(),
                   [](const Note& a, const Note& b) { return a.x < b.x; });
  if (!timed.empty() || !barXs.empty()) {
    const double left = staff ? staff->left : -std::numeric_limits<double>::infinity();
    const double right = staff ? staff->right : std::numeric_limits<double>::infinity();
    out.measures = partition_measures(std::move(timed), std::move(barXs), left, right);
  }
  return out;
}

}  // namespace notesketch
