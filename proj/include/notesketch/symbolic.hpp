#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "notesketch/scene.hpp"
#include "notesketch/symbols.hpp"

namespace notesketch {

// Display-free content of a scene: what answers store and grading compares.
struct SymbolicStaff {
  std::array<double, 5> lineYs{};
  double step = 0.0;

  friend bool operator==(const SymbolicStaff&, const SymbolicStaff&) = default;
};

struct KeyAccidental {
  Accidental accidental = Accidental::Sharp;
  int position = 0;

  friend bool operator==(const KeyAccidental&, const KeyAccidental&) = default;
};

struct SymbolicTime {
  int numerator = 4;
  int denominator = 4;

  friend bool operator==(const SymbolicTime&, const SymbolicTime&) = default;
};

enum class ElementKind { Note, Rest, Bar };

// One entry of the body, in left-to-right order.
struct Element {
  ElementKind kind = ElementKind::Note;
  double x = 0.0;
  int position = 0;                      // notes
  std::string pitch;                     // notes; empty without a clef
  std::optional<Accidental> accidental;  // notes
  std::optional<double> durationBeats;   // notes; nullopt for an inconsistent note
  RestKind rest = RestKind::Quarter;     // rests
  BarKind bar = BarKind::Single;         // bars

  friend bool operator==(const Element&, const Element&) = default;
};

struct SymbolicScene {
  std::optional<SymbolicStaff> staff;
  std::optional<Clef> clef;
  std::vector<KeyAccidental> key;        // left to right
  std::optional<SymbolicTime> time;
  std::vector<int> digits;               // digits that never formed a time signature
  std::vector<Element> elements;         // x order

  friend bool operator==(const SymbolicScene&, const SymbolicScene&) = default;
};

struct SymbolicMeasure {
  int index = 0;                         // 1-based
  double beats = 0.0;
  std::vector<std::size_t> elements;     // indices into SymbolicScene::elements

  friend bool operator==(const SymbolicMeasure&, const SymbolicMeasure&) = default;
};

SymbolicScene to_symbolic(const Scene& scene);

// Regions between bars; an empty region after the last bar is not a measure.
std::vector<SymbolicMeasure> measures_of(const SymbolicScene& scene);

// Beat count in shortest round-trip form ("1", "0.5", "1.5").
std::string format_number(double value);

// Compact labels used by corpus expectations and the CLI listing:
// "staff", "clef:treble", "key:sharp@8", "time:3/4", "digit:5",
// "note:G4:1", "note:F5:0.5:sharp", "rest:quarter", "bar:double".
std::string note_token(const Element& note);
std::vector<std::string> scene_tokens(const SymbolicScene& scene);

// XML answer documents. Throws MalformedDocument with the element path.
std::string serialize_scene(const SymbolicScene& scene);
SymbolicScene deserialize_scene(const std::string& xml);
SymbolicScene load_scene_document(const std::filesystem::path& path);

}  // namespace notesketch
