#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "notesketch/geometry.hpp"

namespace notesketch {

enum class GlyphKind {
  TrebleClef,
  BassClef,
  Sharp,
  Flat,
  Digit,
  WholeRest,
  HalfRest,
  QuarterRest,
  EighthRest,
  NoteHeadFilled,
  NoteHeadEmpty,
  BarSingle,
  BarDouble,
};

enum class ComponentKind { Stem, Flag, Beam, Dot, LedgerLine, AccidentalSharp, AccidentalFlat };

enum class Clef { Treble, Bass };
enum class Accidental { Sharp, Flat };
enum class RestKind { Whole, Half, Quarter, Eighth };
enum class BarKind { Single, Double };

std::string_view to_string(GlyphKind kind);
std::string_view to_string(ComponentKind kind);
std::string_view to_string(Clef clef);
std::string_view to_string(Accidental accidental);
std::string_view to_string(RestKind kind);
std::string_view to_string(BarKind kind);

std::optional<Clef> parse_clef(std::string_view text);
std::optional<Accidental> parse_accidental(std::string_view text);
std::optional<RestKind> parse_rest_kind(std::string_view text);
std::optional<BarKind> parse_bar_kind(std::string_view text);

bool is_clef(GlyphKind kind);
bool is_key_accidental(GlyphKind kind);
bool is_rest(GlyphKind kind);
bool is_note_head(GlyphKind kind);
bool is_bar(GlyphKind kind);

double rest_beats(RestKind kind);
std::optional<RestKind> rest_kind_of(GlyphKind kind);

struct Glyph {
  int id = 0;
  GlyphKind kind = GlyphKind::Digit;
  BoundingBox bbox;
  std::vector<int> strokeIds;
  std::optional<int> position;   // staff position for positioned kinds
  std::optional<double> score;   // similarity when template-matched
  int digit = -1;                // value for Digit glyphs

  friend bool operator==(const Glyph&, const Glyph&) = default;
};

struct NoteComponent {
  int id = 0;
  ComponentKind kind = ComponentKind::Stem;
  int anchor = 0;                    // head glyph id, or stem component id for flags/beams
  std::optional<int> secondAnchor;   // second stem of a beam
  BoundingBox bbox;
  std::vector<int> strokeIds;
  std::optional<Point> freeEnd;      // stems: the end away from the head

  friend bool operator==(const NoteComponent&, const NoteComponent&) = default;
};

struct TimeSignature {
  int numerator = 4;
  int denominator = 4;
  BoundingBox bbox;
  int numeratorGlyph = 0;
  int denominatorGlyph = 0;

  friend bool operator==(const TimeSignature&, const TimeSignature&) = default;
};

struct Note {
  int headId = 0;
  int position = 0;
  std::string pitch;                   // letter + octave, e.g. "E4"; empty without a clef
  std::optional<Accidental> accidental;
  std::optional<double> durationBeats; // nullopt: components match no duration rule
  std::vector<int> componentIds;
  double x = 0.0;

  friend bool operator==(const Note&, const Note&) = default;
};

struct Measure {
  int index = 0;                 // 1-based
  std::vector<int> symbolIds;    // note head / rest glyph ids in x order
  double beatTotal = 0.0;
  double startX = 0.0;
  double endX = 0.0;

  friend bool operator==(const Measure&, const Measure&) = default;
};

}  // namespace notesketch
