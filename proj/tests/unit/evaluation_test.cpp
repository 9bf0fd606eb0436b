#include "doctest.h"
#include "json.hpp"
#include "notesketch/error.hpp"
#include "notesketch/evaluation.hpp"
#include "notesketch/synth.hpp"
#include "support.hpp"

using namespace notesketch;
using notesketch::testing::bundled_library;
using notesketch::testing::TempDir;

TEST_SUITE("evaluation") {

TEST_CASE("judging is all or nothing") {
  Sketch sketch = synth::corpus_sample("treble_clef", 0);
  const Scene scene = recognize_strokes(bundled_library(), sketch.strokes);
  CHECK(judge_sample(sketch, scene).correct);

  Sketch wrong = sketch;
  wrong.expect = {"staff", "clef:bass"};
  CHECK_FALSE(judge_sample(wrong, scene).correct);

  Sketch byLabel = sketch;
  byLabel.expect.clear();
  byLabel.label = "TrebleClef";
  CHECK(judge_sample(byLabel, scene).correct);

  Scene leftover = scene;
  leftover.pending.push_back(999);
  CHECK_FALSE(judge_sample(sketch, leftover).correct);
}

TEST_CASE("corpus evaluation and its machine-readable recount") {
  TempDir dir;
  for (const std::string cls : {"staff", "bar_double", "key_sharp"}) {
    for (int i = 0; i < 3; ++i) {
      save_sketch(synth::corpus_sample(cls, i), dir.path() / cls / ("s" + std::to_string(i) + ".json"));
    }
  }
  const EvalResult r = evaluate_corpus(dir.path(), bundled_library());
  CHECK(r.total() == 9);
  CHECK(r.perClass.size() == 3);
  const auto j = nlohmann::json::parse(eval_to_json(r));
  int total = 0, correct = 0;
  for (const auto& s : j["samples"]) {
    ++total;
    correct += s["correct"].get<bool>() ? 1 : 0;
  }
  CHECK(total == j["total"].get<int>());
  CHECK(correct == j["correct"].get<int>());
  CHECK(j["overallAccuracy"].get<double>() == doctest::Approx(static_cast<double>(correct) / total));
  CHECK(eval_summary(r).find("overall") != std::string::npos);
}

TEST_CASE("an empty corpus is an error") {
  TempDir dir;
  CHECK_THROWS_AS(evaluate_corpus(dir.path(), bundled_library()), Error);
  CHECK_THROWS_AS(evaluate_corpus(dir.path() / "missing", bundled_library()), Error);
}

}
