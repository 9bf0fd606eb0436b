#include "doctest.h"
#include "notesketch/error.hpp"
#include "notesketch/grading.hpp"
#include "notesketch/notes.hpp"

using namespace notesketch;

namespace {

Element note(double x, int position, double beats) {
  Element e;
  e.kind = ElementKind::Note;
  e.x = x;
  e.position = position;
  e.pitch = pitch_name(Clef::Treble, position);
  e.durationBeats = beats;
  return e;
}

Element rest(double x, RestKind kind) {
  Element e;
  e.kind = ElementKind::Rest;
  e.x = x;
  e.rest = kind;
  return e;
}

Element bar(double x, BarKind kind = BarKind::Single) {
  Element e;
  e.kind = ElementKind::Bar;
  e.x = x;
  e.bar = kind;
  return e;
}

// Treble staff in 4/4 with one sharp: E4 F4 G4 A4 | half rest, half C5 |
SymbolicScene answer() {
  SymbolicScene s;
  s.staff = SymbolicStaff{{100, 120, 140, 160, 180}, 20};
  s.clef = Clef::Treble;
  s.key = {{Accidental::Sharp, 8}};
  s.time = SymbolicTime{4, 4};
  s.elements = {note(200, 0, 1), note(240, 1, 1), note(280, 2, 1), note(320, 3, 1),
                bar(360),        rest(400, RestKind::Half), note(440, 5, 2), bar(500, BarKind::Double)};
  return s;
}

CriterionResult only(const SymbolicScene& scene, Criterion c) {
  return check_criterion(scene, answer(), c);
}

CriteriaFlags just(Criterion c) {
  CriteriaFlags f = CriteriaFlags::from_mask(0);
  f.set(c, true);
  return f;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("grading") {

TEST_CASE("the answer passes every criterion against itself") {
  const Feedback f = evaluate(answer(), answer(), CriteriaFlags{});
  CHECK(f.correct);
  CHECK(f.results.size() == 6);
  for (const CriterionResult& r : f.results) CHECK(r.detail.empty());
}

TEST_CASE("per-criterion details") {
  SymbolicScene s = answer();
  s.staff.reset();
  CHECK(only(s, Criterion::Staff).detail == "no staff was drawn");

  s = answer();
  s.clef = Clef::Bass;
  CHECK(only(s, Criterion::Clef).detail == "expected treble clef, found bass clef");
  s.clef.reset();
  CHECK(only(s, Criterion::Clef).detail == "expected treble clef, found no clef");

  s = answer();
  s.key = {{Accidental::Flat, 4}};
  CHECK(only(s, Criterion::KeySignature).detail ==
        "key accidental 1: expected sharp at position 8, found flat at position 4");
  s.key.clear();
  CHECK(only(s, Criterion::KeySignature).detail ==
        "key accidental 1: expected sharp at position 8, found nothing");

  s = answer();
  s.time.reset();
  CHECK(only(s, Criterion::TimeSignature).detail == "expected 4/4 time, found no time signature");

  s = answer();
  s.elements[1] = note(240, 0, 1);
  CHECK(only(s, Criterion::Duration).detail == "note 2: expected F4 (1 beat), found E4 (1 beat)");

  s = answer();
  s.elements[6].durationBeats = 4.0;
  CHECK(only(s, Criterion::Duration).detail == "note 6: expected C5 (2 beats), found C5 (4 beats)");

  s = answer();
  s.elements[5].rest = RestKind::Whole;
  CHECK(only(s, Criterion::Duration).detail == "rest 5: expected half rest, found whole rest");

  s = answer();
  s.elements[3].accidental = Accidental::Sharp;
  CHECK(only(s, Criterion::Duration).detail == "note 4: expected A4 (1 beat), found A#4 (1 beat)");

  s = answer();
  s.elements.pop_back();
  s.elements.pop_back();
  CHECK(only(s, Criterion::Duration).detail == "note 6: expected C5 (2 beats), found nothing");
}

TEST_CASE("measure criterion counts beats in the meter's unit, then bars") {
  SymbolicScene s = answer();
  s.elements[0].durationBeats = 2.0;
  CHECK(only(s, Criterion::Measure).detail == "measure 1 has 5 beats, expected 4");

  s = answer();
  s.elements[7].bar = BarKind::Single;
  CHECK(only(s, Criterion::Measure).detail == "bar line 2: expected double bar, found single bar");

  s = answer();
  s.elements.erase(s.elements.begin() + 4);
  CHECK(only(s, Criterion::Measure).detail == "measure 1 has 8 beats, expected 4");

  SymbolicScene eighths = answer();
  eighths.time = SymbolicTime{8, 8};
  CHECK(check_criterion(answer(), eighths, Criterion::Measure).passed);
  eighths.time = SymbolicTime{2, 2};
  CHECK(check_criterion(answer(), eighths, Criterion::Measure).passed);
  eighths.time = SymbolicTime{3, 4};
  CHECK(check_criterion(answer(), eighths, Criterion::Measure).detail ==
        "measure 1 has 4 beats, expected 3");

  SymbolicScene unmetered = answer();
  unmetered.time.reset();
  SymbolicScene drawn = answer();
  drawn.elements[0].durationBeats = 4.0;
  CHECK(check_criterion(drawn, unmetered, Criterion::Measure).passed);
  drawn.elements.pop_back();
  CHECK(check_criterion(drawn, unmetered, Criterion::Measure).detail ==
        "expected 2 bar lines, found 1");
}

TEST_CASE("missing answer data") {
  SymbolicScene bare;
  bare.staff = SymbolicStaff{};
  CHECK(code_of([&] { check_criterion(answer(), bare, Criterion::Clef); }) ==
        ErrorCode::MissingAnswerData);
  CHECK(code_of([&] { check_criterion(answer(), bare, Criterion::TimeSignature); }) ==
        ErrorCode::MissingAnswerData);
  CHECK(code_of([&] { check_criterion(answer(), SymbolicScene{}, Criterion::Staff); }) ==
        ErrorCode::MissingAnswerData);
  SymbolicScene unpitched = answer();
  unpitched.elements[0].pitch.clear();
  CHECK(code_of([&] { check_criterion(answer(), unpitched, Criterion::Duration); }) ==
        ErrorCode::MissingAnswerData);
  CHECK(check_criterion(answer(), bare, Criterion::KeySignature).detail ==
        "key accidental 1: expected nothing, found sharp at position 8");
}

TEST_CASE("only enabled criteria are reported") {
  SymbolicScene s = answer();
  s.clef = Clef::Bass;
  const Feedback withClef = evaluate(s, answer(), just(Criterion::Clef));
  CHECK_FALSE(withClef.correct);
  REQUIRE(withClef.results.size() == 1);
  CHECK(withClef.results[0].criterion == Criterion::Clef);
  CriteriaFlags noClef;
  noClef.clef = false;
  CHECK(evaluate(s, answer(), noClef).correct);
  CHECK(code_of([&] { evaluate(s, answer(), CriteriaFlags::from_mask(0)); }) ==
        ErrorCode::AllFlagsDisabled);
}

TEST_CASE("flags, names and masks") {
  for (unsigned m = 0; m < 64; ++m) CHECK(CriteriaFlags::from_mask(m).mask() == m);
  for (Criterion c : kCriteria) CHECK(parse_criterion(to_string(c)) == c);
  CHECK_FALSE(parse_criterion("pitch"));
  CHECK(parse_mode("quiz") == Mode::Quiz);
  CHECK_FALSE(parse_mode("exam"));
}

TEST_CASE("practice progress allows re-checks") {
  ProgressTracker p(Mode::Practice, {1, 2, 3});
  CHECK(p.counts() == Progress{0, 0, 3});
  SymbolicScene wrong = answer();
  wrong.clef = Clef::Bass;
  Feedback f = grade(wrong, answer(), CriteriaFlags{}, 2, p);
  CHECK_FALSE(f.correct);
  CHECK(f.progress == Progress{0, 1, 2});
  f = grade(answer(), answer(), CriteriaFlags{}, 2, p);
  CHECK(f.correct);
  CHECK(f.progress == Progress{1, 0, 2});
  CHECK(p.status(2) == QuestionStatus::Correct);
  CHECK(code_of([&] { build_report(p, {}); }) == ErrorCode::NotApplicable);
  CHECK(code_of([&] { p.record(9, true); }) == ErrorCode::UnknownQuestion);
}

TEST_CASE("quiz locks first results and reports when complete") {
  ProgressTracker p(Mode::Quiz, {1, 2, 3});
  const std::vector<QuestionInfo> info = {{3, "c", "i3"}, {1, "a", "i1"}, {2, "b", ""}};
  grade(answer(), answer(), CriteriaFlags{}, 1, p);
  CHECK(code_of([&] { grade(answer(), answer(), CriteriaFlags{}, 1, p); }) == ErrorCode::QuizLocked);
  CHECK(code_of([&] { build_report(p, info); }) == ErrorCode::QuizIncomplete);
  SymbolicScene wrong = answer();
  wrong.staff.reset();
  grade(wrong, answer(), CriteriaFlags{}, 2, p);
  grade(answer(), answer(), CriteriaFlags{}, 3, p);
  const QuizReport r = build_report(p, info);
  CHECK(r.scorePercent == 67);
  REQUIRE(r.perQuestion.size() == 3);
  CHECK(r.perQuestion[0] == ReportEntry{1, "a", true, "i1"});
  CHECK(r.perQuestion[1].correct == false);
  CHECK(r.perQuestion[2].solutionImageRef == "i3");
}

TEST_CASE("score percent rounds half up") {
  CHECK(score_percent(0, 5) == 0);
  CHECK(score_percent(5, 5) == 100);
  CHECK(score_percent(1, 8) == 13);
  CHECK(score_percent(1, 3) == 33);
  CHECK(score_percent(2, 3) == 67);
  CHECK(score_percent(0, 0) == 0);
}

}
