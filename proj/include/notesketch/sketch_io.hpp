#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "notesketch/geometry.hpp"
#include "notesketch/template_matcher.hpp"

namespace notesketch {

// A captured sketch: canvas size plus strokes in drawing order. Corpus files
// also carry the class label and the tokens the recognizer should produce.
struct Sketch {
  double width = 1200.0;
  double height = 600.0;
  std::vector<Stroke> strokes;
  std::optional<std::string> label;
  std::vector<std::string> expect;

  friend bool operator==(const Sketch&, const Sketch&) = default;
};

// Throws MalformedSketch naming the offending field.
Sketch parse_sketch(const std::string& text);
Sketch load_sketch(const std::filesystem::path& path);
std::string sketch_to_json(const Sketch& sketch, int indent = -1);
void save_sketch(const Sketch& sketch, const std::filesystem::path& path);

// Template library files keep the raw exemplar strokes; normalization runs
// at load time.
TemplateLibrary parse_template_library(const std::string& text);
TemplateLibrary load_template_library(const std::filesystem::path& path);
std::string template_library_to_json(const TemplateLibrary& library);
void save_template_library(const TemplateLibrary& library, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Location of the bundled data directory (templates, corpus, lessons).
// NOTESKETCH_DATA overrides the compiled-in default.
std::filesystem::path data_dir();

}  // namespace notesketch
