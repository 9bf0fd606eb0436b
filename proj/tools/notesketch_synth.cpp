// Regenerates the bundled synthetic data: template captures, the
// evaluation corpus and the lessons.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/synth.hpp"

namespace fs = std::filesystem;
using namespace notesketch;

namespace {

std::string two_digits(int i) { return (i < 10 ? "0" : "") + std::to_string(i); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"notesketch synthetic data generator"};
  app.require_subcommand(1);
  int count = 20;

  auto* templates = app.add_subcommand("templates", "write template captures, one directory per class");
  std::string templatesDir;
  templates->add_option("dir", templatesDir)->required();
  templates->add_option("--count", count, "captures per class");

  auto* corpus = app.add_subcommand("corpus", "write the evaluation corpus, one directory per class");
  std::string corpusDir;
  corpus->add_option("dir", corpusDir)->required();
  corpus->add_option("--count", count, "samples per class");

  auto* lessons = app.add_subcommand("lessons", "write the bundled lessons with answers and images");
  std::string lessonsDir, libraryPath;
  lessons->add_option("dir", lessonsDir)->required();
  lessons->add_option("--templates", libraryPath, "template library (default: bundled)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*templates) {
      for (const std::string& label : synth::template_classes()) {
        for (int i = 0; i < count; ++i) {
          save_sketch(synth::template_capture(label, i),
                      fs::path(templatesDir) / label / (two_digits(i + 1) + ".json"));
        }
      }
    } else if (*corpus) {
      for (const std::string& cls : synth::corpus_classes()) {
        for (int i = 0; i < count; ++i) {
          save_sketch(synth::corpus_sample(cls, i),
                      fs::path(corpusDir) / cls / (two_digits(i + 1) + ".json"));
        }
      }
    } else if (*lessons) {
      const fs::path lib =
          libraryPath.empty() ? data_dir() / "templates" / "library.json" : fs::path(libraryPath);
      synth::write_lessons(lessonsDir,
                           std::make_shared<const TemplateLibrary>(load_template_library(lib)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
