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

// --- Pitch and duration tables ---------------------------------------------

// Letter name plus octave for a staff position: treble puts E4 on the bottom
// line, bass puts G2 there, and each position step is one letter name.
std::string pitch_name(Clef clef, int position);

// Components hanging off one note head.
struct NoteShape {
  bool filled = false;
  int stems = 0;
  int flags = 0;
  int beams = 0;
  int dots = 0;

  friend bool operator==(const NoteShape&, const NoteShape&) = default;
};

// Duration in quarter-note beats, or nullopt when the combination matches no
// rule (an inconsistent note).
std::optional<double> duration_beats(const NoteShape& shape);

// --- Component classifiers --------------------------------------------------
// Each checks attachment to a head (or a stem's free end) within the
// configured distance, then the component's own geometry.

std::optional<NoteComponent> classify_stem(const Stroke& stroke, const RecognitionContext& ctx,
                                           const RecognitionConfig& config);
std::optional<NoteComponent> classify_flag(const Stroke& stroke, const RecognitionContext& ctx,
                                           const RecognitionConfig& config);
std::optional<NoteComponent> classify_dot(const Stroke& stroke, const RecognitionContext& ctx,
                                          const RecognitionConfig& config);
std::optional<NoteComponent> classify_beam(const Stroke& stroke, const RecognitionContext& ctx,
                                           const RecognitionConfig& config);
std::optional<NoteComponent> classify_ledger_line(const Stroke& stroke,
                                                  const RecognitionContext& ctx,
                                                  const RecognitionConfig& config);
std::optional<NoteComponent> classify_note_accidental(std::span<const Stroke> strokes,
                                                      const RecognitionContext& ctx,
                                                      const GlyphMatcher& matcher,
                                                      const RecognitionConfig& config);

// Tries stems, flags, dots, beams, accidentals, then ledger lines; the first
// kind that accepts wins. Only accidentals may span several strokes.
std::optional<NoteComponent> classify_component(std::span<const Stroke> strokes,
                                                const RecognitionContext& ctx,
                                                const GlyphMatcher& matcher,
                                                const RecognitionConfig& config);

// --- Assembly ----------------------------------------------------------------

struct TimedElement {
  int id = 0;
  double x = 0.0;
  double beats = 0.0;
};

// Splits elements into measures at the bar x positions. A trailing empty
// region after the last bar is not a measure.
std::vector<Measure> partition_measures(std::vector<TimedElement> elements,
                                        std::vector<double> barXs, double left, double right);

struct Assembly {
  std::vector<Note> notes;        // x order
  std::vector<Measure> measures;
};

NoteShape shape_of(const Glyph& head, std::span<const NoteComponent> components);

Assembly assemble_notes_and_measures(std::span<const Glyph> glyphs,
                                     std::span<const NoteComponent> components,
                                     std::optional<Clef> clef,
                                     const std::optional<StaffModel>& staff);

}  // namespace notesketch
