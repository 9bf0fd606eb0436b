#include <algorithm>
#include <random>

#include "doctest.h"
#include "notesketch/error.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/synth.hpp"
#include "support.hpp"

using namespace notesketch;
using notesketch::testing::bundled_library;
using notesketch::testing::ellipse;
using notesketch::testing::segment;
using notesketch::testing::staff_strokes;

namespace {

// Staff with top line at 200 and step 30: bottom line 320, position p at
// 320 - 15 p.
Recognizer staffed() {
  Recognizer r(bundled_library());
  for (Stroke& s : staff_strokes()) r.add_stroke(std::move(s));
  return r;
}

bool has_event(const std::vector<SceneEvent>& events, SceneEventKind kind, const std::string& label) {
  return std::any_of(events.begin(), events.end(),
                     [&](const SceneEvent& e) { return e.kind == kind && e.label == label; });
}

}  // namespace

TEST_SUITE("scene") {

TEST_CASE("staff lines wait until the fifth arrives") {
  Recognizer r(bundled_library());
  const auto lines = staff_strokes();
  for (int i = 0; i < 4; ++i) {
    const auto events = r.add_stroke(lines[i]);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == SceneEventKind::Pending);
  }
  CHECK(r.scene().pending.size() == 4);
  const auto events = r.add_stroke(lines[4]);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == SceneEventKind::StaffAssembled);
  CHECK(events[0].strokeIds == std::vector<int>{1, 2, 3, 4, 5});
  REQUIRE(r.scene().staff);
  CHECK(r.scene().staff->step == doctest::Approx(30.0));
  CHECK(r.scene().pending.empty());
  CHECK(check_partition(r.scene()).empty());
}

TEST_CASE("a bass clef is recognized only once both dots are drawn") {
  synth::Composer c(7);
  c.staff();
  c.bass_clef(40.0);
  const Sketch sk = c.sketch();
  REQUIRE(sk.strokes.size() == 8);
  Recognizer r(bundled_library());
  for (int i = 0; i < 5; ++i) r.add_stroke(sk.strokes[i]);
  REQUIRE(r.scene().staff);
  r.add_stroke(sk.strokes[5]);
  r.add_stroke(sk.strokes[6]);
  CHECK(r.scene().glyphs.empty());
  CHECK(r.scene().pending.size() == 2);
  const auto events = r.add_stroke(sk.strokes[7]);
  CHECK(has_event(events, SceneEventKind::SymbolRecognized, "BassClef"));
  CHECK(r.scene().clef() == Clef::Bass);
  CHECK(r.scene().glyphs.at(0).strokeIds.size() == 3);
  CHECK(r.scene().pending.empty());
}

TEST_CASE("a stem turns a whole note into a half note and undo reverts it") {
  Recognizer r = staffed();
  const auto headEvents = r.add_stroke(ellipse(10, {400, 290}, 18, 14));
  CHECK(has_event(headEvents, SceneEventKind::SymbolRecognized, "NoteHeadEmpty"));
  REQUIRE(r.scene().notes.size() == 1);
  CHECK(r.scene().notes[0].durationBeats == 4.0);
  CHECK(r.scene().notes[0].position == 2);

  const auto stemEvents = r.add_stroke(segment(11, {418, 288}, {418, 192}));
  CHECK(has_event(stemEvents, SceneEventKind::SymbolRecognized, "Stem"));
  REQUIRE(r.scene().notes.size() == 1);
  CHECK(r.scene().notes[0].durationBeats == 2.0);

  const auto undoEvents = r.undo();
  CHECK(has_event(undoEvents, SceneEventKind::SymbolRevoked, "Stem"));
  CHECK(r.scene().notes.at(0).durationBeats == 4.0);
  CHECK(r.scene().rawStrokes.size() == 6);
  CHECK(check_partition(r.scene()).empty());
}

TEST_CASE("a stem drawn before its head is picked up when the head appears") {
  Recognizer r = staffed();
  r.add_stroke(segment(10, {418, 288}, {418, 192}));
  CHECK(r.scene().pending == std::vector<int>{10});
  const auto events = r.add_stroke(ellipse(11, {400, 290}, 18, 14));
  CHECK(has_event(events, SceneEventKind::SymbolRecognized, "NoteHeadEmpty"));
  CHECK(has_event(events, SceneEventKind::SymbolRecognized, "Stem"));
  CHECK(r.scene().pending.empty());
  CHECK(r.scene().notes.at(0).durationBeats == 2.0);
}

TEST_CASE("classifier hierarchy order") {
  Recognizer r = staffed();
  std::vector<std::string> stages;
  r.set_trace([&](std::string_view stage, const std::vector<int>&) {
    if (stages.empty() || stages.back() != stage) stages.emplace_back(stage);
  });
  r.add_stroke(make_stroke(20, {{600, 420}, {640, 470}, {610, 520}}));
  const std::vector<std::string> expected = {"clef", "key",  "beat",     "rest",
                                             "head", "bar", "component"};
  CHECK(stages == expected);
}

TEST_CASE("before the staff only the staff stage runs") {
  Recognizer r(bundled_library());
  std::vector<std::string> stages;
  r.set_trace([&](std::string_view stage, const std::vector<int>&) { stages.emplace_back(stage); });
  r.add_stroke(ellipse(1, {400, 290}, 18, 14));
  CHECK(stages == std::vector<std::string>{"staff"});
}

TEST_CASE("pending strokes beyond the cap become unrecognized") {
  RecognitionConfig config;
  config.pendingCap = 3;
  Recognizer r(bundled_library(), config);
  for (int i = 0; i < 5; ++i) r.add_stroke(segment(i + 1, {100.0 + 50 * i, 50}, {120.0 + 50 * i, 90}));
  CHECK(r.scene().pending == std::vector<int>{3, 4, 5});
  CHECK(r.scene().unrecognized == std::vector<int>{1, 2});
  CHECK(stroke_label(r.scene(), 1) == "unrecognized");
  CHECK(stroke_label(r.scene(), 5) == "pending");
  CHECK(check_partition(r.scene()).empty());
}

TEST_CASE("errors, clear and undo bookkeeping") {
  Recognizer r(bundled_library());
  CHECK_THROWS_AS(r.undo(), Error);
  r.add_stroke(segment(1, {0, 0}, {10, 10}));
  try {
    r.add_stroke(segment(1, {5, 5}, {50, 50}));
    FAIL("expected DuplicateStroke");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateStroke);
  }
  CHECK_THROWS_AS(r.add_stroke(Stroke{2, {}}), Error);
  const auto events = r.clear();
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == SceneEventKind::Cleared);
  CHECK(r.scene().rawStrokes.empty());
  CHECK(r.scene().pending.empty());
  r.add_stroke(segment(1, {0, 0}, {10, 10}));
  CHECK(r.scene().rawStrokes.size() == 1);
}

TEST_CASE("undo of a staff line revokes the staff") {
  Recognizer r = staffed();
  const auto events = r.undo();
  CHECK(has_event(events, SceneEventKind::SymbolRevoked, "staff"));
  CHECK_FALSE(r.scene().staff);
  CHECK(r.scene().pending.size() == 4);
}

TEST_CASE("recognition of a composed phrase") {
  synth::Composer c(11);
  c.staff();
  const BoundingBox clef = c.treble_clef(40.0);
  c.note(clef.maxX + 60, 4, {});
  c.note(clef.maxX + 140, 6, {});
  c.bar(clef.maxX + 220, BarKind::Single);
  const Sketch sk = c.sketch();
  const Scene scene = recognize_strokes(bundled_library(), sk.strokes);
  CHECK(scene.pending.empty());
  CHECK(scene.unrecognized.empty());
  CHECK(scene.clef() == Clef::Treble);
  REQUIRE(scene.notes.size() == 2);
  CHECK(scene.notes[0].pitch == "B4");
  CHECK(scene.notes[1].pitch == "D5");
  CHECK(scene.notes[0].durationBeats == 1.0);
  REQUIRE(scene.measures.size() == 1);
  CHECK(scene.measures[0].beatTotal == 2.0);
}

TEST_CASE("partition check reports a stroke claimed twice") {
  Recognizer r = staffed();
  Scene broken = r.scene();
  broken.pending.push_back(broken.staffStrokeIds.front());
  CHECK_FALSE(check_partition(broken).empty());
  broken = r.scene();
  broken.staffStrokeIds.pop_back();
  CHECK_FALSE(check_partition(broken).empty());
}

}
