#include "notesketch/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "notesketch/error.hpp"
#include "notesketch/symbolic.hpp"

namespace notesketch {

namespace fs = std::filesystem;

int EvalResult::total() const {
  int n = 0;
  for (const auto& [cls, s] : perClass) n += s.total;
  return n;
}

int EvalResult::correct() const {
  int n = 0;
  for (const auto& [cls, s] : perClass) n += s.correct;
  return n;
}

double EvalResult::overall_accuracy() const {
  const int n = total();
  return n == 0 ? 0.0 : static_cast<double>(correct()) / n;
}

SampleOutcome judge_sample(const Sketch& sketch, const Scene& scene) {
  SampleOutcome out;
  out.cls = sketch.label.value_or("");
  out.expected = sketch.expect;
  out.found = scene_tokens(to_symbolic(scene));
  out.leftover = static_cast<int>(scene.pending.size() + scene.unrecognized.size());
  if (!sketch.expect.empty()) {
    out.correct = out.leftover == 0 && out.found == out.expected;
  } else {
    bool labelled = false;
    for (const Stroke& s : scene.rawStrokes) labelled |= stroke_label(scene, s.id) == out.cls;
    out.correct = out.leftover == 0 && labelled;
  }
  return out;
}

EvalResult evaluate_corpus(const fs::path& dir, std::shared_ptr<const TemplateLibrary> library,
                           const RecognitionConfig& config) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::EmptyCorpus, dir.string() + " is not a directory");
  std::vector<fs::path> classes;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) classes.push_back(entry.path());
  }
  std::sort(classes.begin(), classes.end());

  EvalResult result;
  for (const fs::path& classDir : classes) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(classDir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    const std::string cls = classDir.filename().string();
    for (const fs::path& file : files) {
      Sketch sketch = load_sketch(file);
      if (!sketch.label) sketch.label = cls;
      const Scene scene =
          recognize_strokes(library, sketch.strokes, config, sketch.width, sketch.height);
      SampleOutcome outcome = judge_sample(sketch, scene);
      outcome.file = fs::relative(file, dir).generic_string();
      outcome.cls = cls;
      ClassStats& stats = result.perClass[cls];
      ++stats.total;
      stats.correct += outcome.correct ? 1 : 0;
      result.samples.push_back(std::move(outcome));
    }
  }
  if (result.samples.empty()) throw Error(ErrorCode::EmptyCorpus, "no samples under " + dir.string());
  return result;
}

std::string eval_to_json(const EvalResult& result) {
  nlohmann::json j;
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [cls, s] : result.perClass) {
    classes[cls] = {{"total", s.total}, {"correct", s.correct}, {"accuracy", s.accuracy()}};
  }
  j["perClass"] = std::move(classes);
  j["total"] = result.total();
  j["correct"] = result.correct();
  j["overallAccuracy"] = result.overall_accuracy();
  nlohmann::json samples = nlohmann::json::array();
  for (const SampleOutcome& s : result.samples) {
    samples.push_back({{"file", s.file},
                       {"class", s.cls},
                       {"correct", s.correct},
                       {"expected", s.expected},
                       {"found", s.found},
                       {"leftoverStrokes", s.leftover}});
  }
  j["samples"] = std::move(samples);
  return j.dump(2);
}

std::string eval_summary(const EvalResult& result) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %7s %7s %9s\n", "class", "correct", "total", "accuracy");
  out << line;
  for (const auto& [cls, s] : result.perClass) {
    std::snprintf(line, sizeof line, "%-18s %7d %7d %9.3f\n", cls.c_str(), s.correct, s.total,
                  s.accuracy());
    out << line;
  }
  std::snprintf(line, sizeof line, "%-18s %7d %7d %9.3f\n", "overall", result.correct(),
                result.total(), result.overall_accuracy());
  out << line;
  return out.str();
}

}  // namespace notesketch
