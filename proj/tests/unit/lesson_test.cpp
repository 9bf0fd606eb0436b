#include "doctest.h"
#include "json.hpp"
#include "notesketch/error.hpp"
#include "notesketch/lesson.hpp"
#include "notesketch/sketch_io.hpp"
#include "support.hpp"

using namespace notesketch;
using nlohmann::json;
using notesketch::testing::TempDir;

namespace {

const std::filesystem::path kLessons = data_dir() / "lessons";

// A five-question lesson in `dir` whose answers are copies of a bundled one.
json small_lesson(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "answers");
  std::filesystem::copy_file(kLessons / "answers" / "lesson1-q2.xml", dir / "answers" / "a.xml");
  write_text_file(dir / "solution.svg", "<svg xmlns=\"http://www.w3.org/2000/svg\"/>");
  json questions = json::array();
  for (int n = 1; n <= 5; ++n) {
    questions.push_back({{"number", n},
                         {"text", "question " + std::to_string(n)},
                         {"answer", "answers/a.xml"},
                         {"criteria", {{"staff", true}, {"clef", n % 2 == 1}}}});
  }
  questions[0]["hint"] = "a hint";
  questions[0]["image"] = "solution.svg";
  return {{"format", "notesketch-lesson"},
          {"version", 1},
          {"title", "Small"},
          {"questions", questions}};
}

ErrorCode load_error(const json& doc, const std::filesystem::path& dir) {
  try {
    parse_lesson(doc.dump(), dir);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

std::vector<std::string> texts(const Lesson& l) {
  std::vector<std::string> out;
  for (const Question& q : l.questions) out.push_back(q.text);
  return out;
}

}  // namespace

TEST_SUITE("lesson") {

TEST_CASE("bundled lessons load and validate cleanly") {
  const auto catalog = load_catalog(kLessons);
  REQUIRE(catalog.size() == 5);
  CHECK(catalog[0].id == "lesson1");
  CHECK(catalog[0].lesson.title == "Staffs and clefs");
  for (const CatalogEntry& e : catalog) {
    CAPTURE(e.id);
    CHECK(e.lesson.questions.size() == 5);
    CHECK(validate_lesson(kLessons / (e.id + ".json")).empty());
  }
}

TEST_CASE("parsing sorts and renumbers questions") {
  TempDir dir;
  json doc = small_lesson(dir.path());
  doc["questions"][0]["number"] = 40;
  doc["questions"][4]["number"] = 7;
  const Lesson l = parse_lesson(doc.dump(), dir.path());
  CHECK(texts(l) == std::vector<std::string>{"question 2", "question 3", "question 4", "question 5",
                                             "question 1"});
  CHECK(l.questions.back().number == 5);
  CHECK(l.questions.back().hint == "a hint");
  CHECK(l.question(5).flags.clef);
  CHECK_THROWS_AS(l.question(6), Error);
}

TEST_CASE("validation errors") {
  TempDir dir;
  const json good = small_lesson(dir.path());
  CHECK(load_error(good, dir.path()) == ErrorCode::IoError);

  json dup = good;
  dup["questions"][1]["number"] = 3;
  CHECK(load_error(dup, dir.path()) == ErrorCode::DuplicateNumber);

  json missing = good;
  missing["questions"][2]["answer"] = "answers/none.xml";
  CHECK(load_error(missing, dir.path()) == ErrorCode::MissingAnswer);

  json noImage = good;
  noImage["questions"][2]["image"] = "none.svg";
  CHECK(load_error(noImage, dir.path()) == ErrorCode::MissingImage);

  json noFlags = good;
  noFlags["questions"][1]["criteria"] = {{"staff", false}};
  CHECK(load_error(noFlags, dir.path()) == ErrorCode::AllFlagsDisabled);

  json extra = good;
  extra["questions"][0]["colour"] = "red";
  try {
    parse_lesson(extra.dump(), dir.path());
    FAIL("expected MalformedLesson");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedLesson);
    CHECK(std::string(e.what()).find("lesson.questions[0].colour") != std::string::npos);
  }

  json badCriterion = good;
  badCriterion["questions"][0]["criteria"]["pitch"] = true;
  CHECK(load_error(badCriterion, dir.path()) == ErrorCode::MalformedLesson);
  json empty = good;
  empty["questions"] = json::array();
  CHECK(load_error(empty, dir.path()) == ErrorCode::MalformedLesson);
  CHECK(load_error(json::array(), dir.path()) == ErrorCode::MalformedLesson);

  write_text_file(dir.path() / "answers" / "broken.xml", "<scene version=\"1\"><clef/></scene>");
  json broken = good;
  broken["questions"][0]["answer"] = "answers/broken.xml";
  CHECK(load_error(broken, dir.path()) == ErrorCode::MalformedLesson);
}

TEST_CASE("renumber moves one question and shifts the rest") {
  TempDir dir;
  const Lesson l = parse_lesson(small_lesson(dir.path()).dump(), dir.path());
  const Lesson moved = renumber(l, 5, 1);
  CHECK(texts(moved) == std::vector<std::string>{"question 5", "question 1", "question 2",
                                                 "question 3", "question 4"});
  for (int n = 1; n <= 5; ++n) CHECK(moved.questions[n - 1].number == n);
  CHECK(renumber(l, 2, 2) == l);
  CHECK(texts(renumber(l, 1, 3)) == std::vector<std::string>{"question 2", "question 3",
                                                              "question 1", "question 4",
                                                              "question 5"});
  try {
    renumber(l, 2, 9);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  try {
    renumber(l, 6, 1);
    FAIL("expected UnknownQuestion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownQuestion);
  }
}

TEST_CASE("criteria selection") {
  TempDir dir;
  const Lesson l = parse_lesson(small_lesson(dir.path()).dump(), dir.path());
  CriteriaFlags f = CriteriaFlags::from_mask(0);
  f.staff = true;
  const Lesson changed = set_criteria(l, 1, f);
  CHECK_FALSE(changed.question(1).flags.clef);
  CHECK(changed.question(2) == l.question(2));
  CHECK_THROWS_AS(set_criteria(l, 1, CriteriaFlags::from_mask(0)), Error);
  CHECK_THROWS_AS(set_criteria(l, 8, f), Error);
}

TEST_CASE("save and load round trip") {
  TempDir dir;
  const Lesson l = parse_lesson(small_lesson(dir.path()).dump(), dir.path());
  save_lesson(renumber(l, 4, 2), dir.path() / "out.json");
  const Lesson back = load_lesson(dir.path() / "out.json");
  CHECK(back == renumber(l, 4, 2));
  for (const CatalogEntry& e : load_catalog(kLessons)) {
    save_lesson(e.lesson, kLessons / ("roundtrip-" + e.id + ".tmp"));
    const Lesson again = load_lesson(kLessons / ("roundtrip-" + e.id + ".tmp"));
    std::filesystem::remove(kLessons / ("roundtrip-" + e.id + ".tmp"));
    CHECK(again == e.lesson);
  }
}

TEST_CASE("validation reports criteria the answer cannot support") {
  TempDir dir;
  json doc = small_lesson(dir.path());
  doc["questions"][3]["criteria"]["timeSignature"] = true;
  write_text_file(dir.path() / "l.json", doc.dump());
  const auto findings = validate_lesson(dir.path() / "l.json");
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == ErrorCode::MissingAnswerData);
  CHECK(findings[0].message.find("question 4") == 0);
  const auto loadFailure = validate_lesson(dir.path() / "none.json");
  REQUIRE(loadFailure.size() == 1);
}

}
