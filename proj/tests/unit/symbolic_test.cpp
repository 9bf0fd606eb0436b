#include <random>

#include "doctest.h"
#include "notesketch/error.hpp"
#include "notesketch/symbolic.hpp"
#include "random_scene.hpp"

using namespace notesketch;

namespace {

SymbolicScene sample() {
  SymbolicScene s;
  s.staff = SymbolicStaff{{100, 120, 140, 160, 180}, 20};
  s.clef = Clef::Treble;
  s.key = {{Accidental::Sharp, 8}};
  s.time = SymbolicTime{3, 4};
  Element n;
  n.kind = ElementKind::Note;
  n.x = 200.25;
  n.position = 3;
  n.pitch = "F4";
  n.durationBeats = 1.5;
  n.accidental = Accidental::Sharp;
  Element r;
  r.kind = ElementKind::Rest;
  r.x = 260;
  r.rest = RestKind::Eighth;
  Element b;
  b.kind = ElementKind::Bar;
  b.x = 300;
  b.bar = BarKind::Double;
  s.elements = {n, r, b};
  return s;
}

ErrorCode code_of(const std::string& xml) {
  try {
    deserialize_scene(xml);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

std::string wrap(const std::string& body) { return "<scene version=\"1\">" + body + "</scene>"; }

}  // namespace

TEST_SUITE("symbolic") {

TEST_CASE("a scene survives a round trip through XML") {
  const SymbolicScene s = sample();
  const std::string xml = serialize_scene(s);
  CHECK(xml.find("<note order=\"0\" x=\"200.25\" position=\"3\" pitch=\"F4\" durationBeats=\"1.5\" "
                 "accidental=\"sharp\"/>") != std::string::npos);
  CHECK(deserialize_scene(xml) == s);
  CHECK(deserialize_scene(serialize_scene(SymbolicScene{})) == SymbolicScene{});
}

TEST_CASE("random scenes round trip") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const SymbolicScene s = notesketch::testing::random_scene(rng);
    REQUIRE(deserialize_scene(serialize_scene(s)) == s);
  }
}

TEST_CASE("malformed documents are rejected") {
  CHECK(code_of("<scene") == ErrorCode::MalformedDocument);
  CHECK(code_of("<other/>") == ErrorCode::MalformedDocument);
  CHECK(code_of("<scene version=\"2\"/>") == ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<clef kind=\"alto\"/>")) == ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<staff step=\"20\"><line y=\"1\"/></staff>")) == ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<time numerator=\"3\" denominator=\"5\"/>")) == ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<note order=\"0\" x=\"1\"/>")) == ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<note order=\"1\" x=\"1\" position=\"2\"/>")) == ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<rest order=\"0\" x=\"1\" kind=\"quarter\" size=\"2\"/>")) ==
        ErrorCode::MalformedDocument);
  CHECK(code_of(wrap("<note order=\"0\" x=\"1\" position=\"2\" pitch=\"H4\"/>")) ==
        ErrorCode::MalformedDocument);
}

TEST_CASE("error messages carry the element path") {
  try {
    deserialize_scene(wrap("<bar order=\"0\" x=\"1\" kind=\"single\"/><bar order=\"1\" x=\"2\" kind=\"triple\"/>"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("scene/bar[2]") != std::string::npos);
  }
}

TEST_CASE("measures and tokens") {
  SymbolicScene s = sample();
  const auto m = measures_of(s);
  REQUIRE(m.size() == 1);
  CHECK(m[0].beats == 2.0);
  CHECK(m[0].elements == std::vector<std::size_t>{0, 1});
  const std::vector<std::string> expected = {"staff",       "clef:treble",  "key:sharp@8",
                                             "time:3/4",    "note:F4:1.5:sharp",
                                             "rest:eighth", "bar:double"};
  CHECK(scene_tokens(s) == expected);
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(4.0) == "4");
}

}
