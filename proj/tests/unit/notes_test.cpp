#include "doctest.h"
#include "notesketch/notes.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/symbolic.hpp"
#include "notesketch/synth.hpp"
#include "support.hpp"

using namespace notesketch;
using notesketch::testing::bundled_library;

namespace {

using V = std::vector<std::string>;

// Staff, treble clef, then `draw`.
V treble_tokens(std::uint64_t seed, const std::function<void(synth::Composer&)>& draw) {
  synth::Composer c(seed);
  c.staff();
  c.treble_clef(40.0);
  draw(c);
  const Scene scene = recognize_strokes(bundled_library(), c.sketch().strokes);
  V out = scene_tokens(to_symbolic(scene));
  for (std::size_t i = 0; i < scene.pending.size() + scene.unrecognized.size(); ++i) {
    out.push_back("leftover");
  }
  return out;
}

synth::NoteSpec spec(bool filled, bool stem, bool flag = false, bool dot = false) {
  synth::NoteSpec s;
  s.filled = filled;
  s.stem = stem;
  s.flag = flag;
  s.dot = dot;
  return s;
}

}  // namespace

TEST_SUITE("notes") {

TEST_CASE("pitch names") {
  CHECK(pitch_name(Clef::Treble, 0) == "E4");
  CHECK(pitch_name(Clef::Treble, 4) == "B4");
  CHECK(pitch_name(Clef::Treble, 5) == "C5");
  CHECK(pitch_name(Clef::Treble, -2) == "C4");
  CHECK(pitch_name(Clef::Bass, 0) == "G2");
  CHECK(pitch_name(Clef::Bass, 10) == "C4");
  CHECK(pitch_name(Clef::Bass, -4) == "C2");
}

TEST_CASE("duration rules") {
  CHECK(duration_beats({.filled = false}) == 4.0);
  CHECK(duration_beats({.filled = false, .stems = 1}) == 2.0);
  CHECK(duration_beats({.filled = true, .stems = 1}) == 1.0);
  CHECK(duration_beats({.filled = true, .stems = 1, .flags = 1}) == 0.5);
  CHECK(duration_beats({.filled = true, .stems = 1, .beams = 1}) == 0.5);
  CHECK(duration_beats({.filled = true, .stems = 1, .flags = 1, .dots = 1}) == 0.75);
  CHECK(duration_beats({.filled = false, .stems = 1, .dots = 1}) == 3.0);
  CHECK_FALSE(duration_beats({.filled = true}));
  CHECK_FALSE(duration_beats({.filled = false, .stems = 1, .flags = 1}));
  CHECK_FALSE(duration_beats({.filled = true, .stems = 1, .flags = 2}));
  CHECK_FALSE(duration_beats({.filled = true, .stems = 2}));
  CHECK_FALSE(duration_beats({.filled = true, .stems = 1, .dots = 2}));
}

TEST_CASE("measures split at bars and drop an empty trailing region") {
  const std::vector<TimedElement> elements = {{1, 100, 1}, {2, 300, 2}, {3, 200, 0.5}, {4, 500, 4}};
  const auto m = partition_measures(elements, {400, 250}, 0, 1000);
  REQUIRE(m.size() == 3);
  CHECK(m[0].symbolIds == std::vector<int>{1, 3});
  CHECK(m[0].beatTotal == 1.5);
  CHECK(m[1].symbolIds == std::vector<int>{2});
  CHECK(m[2].symbolIds == std::vector<int>{4});
  CHECK(m[2].index == 3);
  const auto closed = partition_measures({{1, 100, 1}}, {900}, 0, 1000);
  CHECK(closed.size() == 1);
  const auto empty = partition_measures({}, {300, 600}, 0, 1000);
  CHECK(empty.size() == 2);
}

TEST_CASE("flags, dots and accidentals") {
  CHECK(treble_tokens(21, [](auto& c) { c.note(240, 2, spec(true, true, true)); }) ==
        V{"staff", "clef:treble", "note:G4:0.5"});
  CHECK(treble_tokens(22, [](auto& c) { c.note(240, 6, spec(false, true, false, true)); }) ==
        V{"staff", "clef:treble", "note:D5:3"});
  CHECK(treble_tokens(23,
                      [](auto& c) {
                        synth::NoteSpec s;
                        s.accidental = Accidental::Sharp;
                        c.note(260, 3, s);
                      }) == V{"staff", "clef:treble", "note:A4:1:sharp"});
  CHECK(treble_tokens(24,
                      [](auto& c) {
                        synth::NoteSpec s;
                        s.accidental = Accidental::Flat;
                        c.note(260, 4, s);
                      }) == V{"staff", "clef:treble", "note:B4:1:flat"});
}

TEST_CASE("ledger lines and beams") {
  CHECK(treble_tokens(25, [](auto& c) { c.note(240, -2, spec(true, true)); }) ==
        V{"staff", "clef:treble", "note:C4:1"});
  CHECK(treble_tokens(26, [](auto& c) { c.note(240, 10, spec(false, false)); }) ==
        V{"staff", "clef:treble", "note:A5:4"});
  CHECK(treble_tokens(27,
                      [](synth::Composer& c) {
                        const synth::DrawnNote a = c.note(240, 2, {});
                        const synth::DrawnNote b = c.note(320, 3, {});
                        c.beam(a, b);
                      }) == V{"staff", "clef:treble", "note:G4:0.5", "note:A4:0.5"});
}

}
