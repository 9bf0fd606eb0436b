#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "notesketch/config.hpp"
#include "notesketch/context.hpp"
#include "notesketch/glyph_matcher.hpp"
#include "notesketch/symbols.hpp"

namespace notesketch {

// Classifiers for clefs, key accidentals, time-signature digits, rests, note
// heads and measure bars. Each one runs a matching check (template score or
// geometric shape test) followed by a definition check against the staff.
// Returned glyphs carry id 0; the pipeline assigns ids.

std::optional<Glyph> classify_clef(std::span<const Stroke> strokes, const RecognitionContext& ctx,
                                   const GlyphMatcher& matcher, const RecognitionConfig& config);

std::optional<Glyph> classify_accidental_key(std::span<const Stroke> strokes,
                                             const RecognitionContext& ctx,
                                             const GlyphMatcher& matcher,
                                             const RecognitionConfig& config);

struct DigitOutcome {
  Glyph digit;
  std::optional<TimeSignature> timeSignature;  // set when it fused with a pending digit
  std::optional<int> partner;                  // glyph id of that pending digit
  std::optional<std::string> diagnostic;       // e.g. an invalid denominator
};

std::optional<DigitOutcome> classify_beat_digits(std::span<const Stroke> strokes,
                                                 const RecognitionContext& ctx,
                                                 const GlyphMatcher& matcher,
                                                 const RecognitionConfig& config);

// Pairs an upper and a lower digit into a time signature when they are
// aligned and together span the staff. Order of the arguments is irrelevant.
struct FusionResult {
  std::optional<TimeSignature> timeSignature;
  std::optional<std::string> diagnostic;
};
FusionResult fuse_digits(const Glyph& a, const Glyph& b, const StaffModel& staff,
                         const RecognitionConfig& config);

std::optional<Glyph> classify_rest(std::span<const Stroke> strokes, const RecognitionContext& ctx,
                                   const GlyphMatcher& matcher, const RecognitionConfig& config);

std::optional<Glyph> classify_note_head(std::span<const Stroke> strokes,
                                        const RecognitionContext& ctx,
                                        const RecognitionConfig& config);

// A scribble that mostly lies inside an empty head fills it. Returns the
// head's glyph id.
std::optional<int> classify_head_fill(const Stroke& stroke, const RecognitionContext& ctx,
                                      const RecognitionConfig& config);

struct BarOutcome {
  Glyph bar;
  std::optional<int> fusedWith;  // id of the single bar this one doubled
};

std::optional<BarOutcome> classify_measure_bar(const Stroke& stroke, const RecognitionContext& ctx,
                                               const RecognitionConfig& config);

// Shape tests shared with other modules.
struct CircleTest {
  bool closed = false;
  bool roundish = false;
  double inkRatio = 0.0;   // path length over ideal circumference
};
CircleTest circle_test(const Stroke& stroke, const RecognitionConfig& config);

// Fraction of the stroke's points inside `box` grown by `margin`.
double containment(const Stroke& stroke, const BoundingBox& box, double margin);

// Corner indices (including both ends) into the 64-point resampling of the
// stroke, found with a straw-window scheme.
std::vector<int> find_corners(const Stroke& stroke, const RecognitionConfig& config);

}  // namespace notesketch
