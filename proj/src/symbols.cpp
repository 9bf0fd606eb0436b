#include "notesketch/symbols.hpp"

namespace notesketch {

std::string_view to_string(GlyphKind kind) {
  switch (kind) {
    case GlyphKind::TrebleClef: return "TrebleClef";
    case GlyphKind::BassClef: return "BassClef";
    case GlyphKind::Sharp: return "Sharp";
    case GlyphKind::Flat: return "Flat";
    case GlyphKind::Digit: return "Digit";
    case GlyphKind::WholeRest: return "WholeRest";
    case GlyphKind::HalfRest: return "HalfRest";
    case GlyphKind::QuarterRest: return "QuarterRest";
    case GlyphKind::EighthRest: return "EighthRest";
    case GlyphKind::NoteHeadFilled: return "NoteHeadFilled";
    case GlyphKind::NoteHeadEmpty: return "NoteHeadEmpty";
    case GlyphKind::BarSingle: return "BarSingle";
    case GlyphKind::BarDouble: return "BarDouble";
  }
  return "?";
}

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Stem: return "Stem";
    case ComponentKind::Flag: return "Flag";
    case ComponentKind::Beam: return "Beam";
    case ComponentKind::Dot: return "Dot";
    case ComponentKind::LedgerLine: return "LedgerLine";
    case ComponentKind::AccidentalSharp: return "AccidentalSharp";
    case ComponentKind::AccidentalFlat: return "AccidentalFlat";
  }
  return "?";
}

std::string_view to_string(Clef clef) { return clef == Clef::Treble ? "treble" : "bass"; }

std::string_view to_string(Accidental accidental) {
  return accidental == Accidental::Sharp ? "sharp" : "flat";
}

std::string_view to_string(RestKind kind) {
  switch (kind) {
    case RestKind::Whole: return "whole";
    case RestKind::Half: return "half";
    case RestKind::Quarter: return "quarter";
    case RestKind::Eighth: return "eighth";
  }
  return "?";
}

std::string_view to_string(BarKind kind) { return kind == BarKind::Single ? "single" : "double"; }

std::optional<Clef> parse_clef(std::string_view text) {
  if (text == "treble") return Clef::Treble;
  if (text == "bass") return Clef::Bass;
  return std::nullopt;
}

std::optional<Accidental> parse_accidental(std::string_view text) {
  if (text == "sharp") return Accidental::Sharp;
  if (text == "flat") return Accidental::Flat;
  return std::nullopt;
}

std::optional<RestKind> parse_rest_kind(std::string_view text) {
  if (text == "whole") return RestKind::Whole;
  if (text == "half") return RestKind::Half;
  if (text == "quarter") return RestKind::Quarter;
  if (text == "eighth") return RestKind::Eighth;
  return std::nullopt;
}

std::optional<BarKind> parse_bar_kind(std::string_view text) {
  if (text == "single") return BarKind::Single;
  if (text == "double") return BarKind::Double;
  return std::nullopt;
}

bool is_clef(GlyphKind kind) { return kind == GlyphKind::TrebleClef || kind == GlyphKind::BassClef; }
bool is_key_accidental(GlyphKind kind) { return kind == GlyphKind::Sharp || kind == GlyphKind::Flat; }
bool is_rest(GlyphKind kind) { return rest_kind_of(kind).has_value(); }

bool is_note_head(GlyphKind kind) {
  return kind == GlyphKind::NoteHeadFilled || kind == GlyphKind::NoteHeadEmpty;
}

bool is_bar(GlyphKind kind) { return kind == GlyphKind::BarSingle || kind == GlyphKind::BarDouble; }

double rest_beats(RestKind kind) {
  switch (kind) {
    case RestKind::Whole: return 4.0;
    case RestKind::Half: return 2.0;
    case RestKind::Quarter: return 1.0;
    case RestKind::Eighth: return 0.5;
  }
  return 0.0;
}

std::optional<RestKind> rest_kind_of(GlyphKind kind) {
  switch (kind) {
    case GlyphKind::WholeRest: return RestKind::Whole;
    case GlyphKind::HalfRest: return RestKind::Half;
    case GlyphKind::QuarterRest: return RestKind::Quarter;
    case GlyphKind::EighthRest: return RestKind::Eighth;
    default: return std::nullopt;
  }
}

}  // namespace notesketch
