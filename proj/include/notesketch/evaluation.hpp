#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "notesketch/config.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/template_matcher.hpp"

namespace notesketch {

struct ClassStats {
  int total = 0;
  int correct = 0;
  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

struct SampleOutcome {
  std::string file;
  std::string cls;
  bool correct = false;
  std::vector<std::string> expected;
  std::vector<std::string> found;
  int leftover = 0;   // pending + unrecognized strokes
};

struct EvalResult {
  std::map<std::string, ClassStats> perClass;
  std::vector<SampleOutcome> samples;
  int total() const;
  int correct() const;
  double overall_accuracy() const;
};

// All-or-nothing judgement. With expectation tokens the recognized tokens
// must equal them exactly; without, some stroke must carry the label. In
// both cases no stroke may be left pending or unrecognized.
SampleOutcome judge_sample(const Sketch& sketch, const Scene& scene);

// Walks `dir/<class>/*.json` in sorted order. Throws EmptyCorpus when no
// sample is found.
EvalResult evaluate_corpus(const std::filesystem::path& dir,
                           std::shared_ptr<const TemplateLibrary> library,
                           const RecognitionConfig& config = {});

std::string eval_to_json(const EvalResult& result);
std::string eval_summary(const EvalResult& result);

}  // namespace notesketch
