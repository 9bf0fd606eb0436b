// notesketch: batch recognition, grading, corpus evaluation, template
// capture, lesson maintenance and the session service.
#include <algorithm>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "httplib.h"
#include "notesketch/evaluation.hpp"
#include "notesketch/lesson.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/service.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/symbolic.hpp"

namespace fs = std::filesystem;
using namespace notesketch;

namespace {

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

std::shared_ptr<const TemplateLibrary> load_library(const std::string& path) {
  const fs::path p = path.empty() ? data_dir() / "templates" / "library.json" : fs::path(path);
  return std::make_shared<const TemplateLibrary>(load_template_library(p));
}

int run_recognize(const std::string& file, const std::string& templates) {
  const Sketch sketch = load_sketch(file);
  const Scene scene = recognize_strokes(load_library(templates), sketch.strokes,
                                        config_from_environment(), sketch.width, sketch.height);
  std::cout << serialize_scene(to_symbolic(scene));
  std::cout << "# strokes\n";
  for (const Stroke& s : sketch.strokes) {
    std::cout << "stroke " << s.id << ": " << stroke_label(scene, s.id) << "\n";
  }
  for (const std::string& d : scene.diagnostics) std::cout << "# diagnostic: " << d << "\n";
  return 0;
}

int run_eval(const std::string& dir, const std::string& templates, const std::string& jsonOut) {
  const EvalResult r = evaluate_corpus(dir, load_library(templates), config_from_environment());
  if (!jsonOut.empty()) write_text_file(jsonOut, eval_to_json(r));
  std::cout << eval_summary(r);
  return 0;
}

int run_capture(const std::string& label, const std::string& dir, const std::string& out) {
  TemplateLibrary library = fs::exists(out) ? load_template_library(out) : TemplateLibrary{};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::EmptyCorpus, "no sketch files in " + dir);
  for (const fs::path& f : files) {
    Sketch s = load_sketch(f);
    if (s.strokes.empty()) throw Error(ErrorCode::MalformedSketch, f.string() + ": no strokes");
    library.add(label, std::move(s.strokes));
  }
  save_template_library(library, out);
  std::cout << "captured " << files.size() << " templates for " << label << "; " << out << " has "
            << library.templates(label).size() << " for " << label << ", "
            << library.template_count() << " in total\n";
  return 0;
}

int run_grade(const std::string& sketchFile, const std::string& lessonFile, int number,
              const std::string& templates) {
  const Lesson lesson = load_lesson(lessonFile);
  const Question& q = lesson.question(number);
  const Sketch sketch = load_sketch(sketchFile);
  const Scene scene = recognize_strokes(load_library(templates), sketch.strokes,
                                        config_from_environment(), sketch.width, sketch.height);
  const Feedback f = evaluate(to_symbolic(scene), q.answer, q.flags);
  std::cout << feedback_to_json(f).dump(2) << "\n";
  return f.correct ? 0 : 3;
}

int run_validate(const std::string& file) {
  const auto findings = validate_lesson(file);
  for (const Finding& f : findings) std::cout << to_string(f.code) << ": " << f.message << "\n";
  std::cout << findings.size() << " finding(s)\n";
  return findings.empty() ? 0 : 1;
}

CriteriaFlags flags_from(const std::vector<std::string>& names) {
  CriteriaFlags flags = CriteriaFlags::from_mask(0);
  for (const std::string& n : names) {
    auto c = parse_criterion(n);
    if (!c) throw Error(ErrorCode::MalformedLesson, "unknown criterion " + n);
    flags.set(*c, true);
  }
  return flags;
}

int run_serve(int port, const std::string& host, const std::string& lessons,
              const std::string& templates) {
  SessionService service(load_catalog(lessons), load_library(templates), config_from_environment());
  httplib::Server server;
  mount_routes(server, service);
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  std::cout << "serving " << kApiPrefix << " on http://" << host << ":" << port << "\n" << std::flush;
  if (!server.listen(host, port)) {
    throw Error(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"notesketch: sketched music notation recognition and grading"};
  app.require_subcommand(1);
  std::string templates;
  app.add_option("--templates", templates, "template library (default: bundled)");

  auto* recognize = app.add_subcommand("recognize", "recognize a sketch file");
  std::string sketchFile;
  recognize->add_option("file", sketchFile)->required();

  auto* eval = app.add_subcommand("eval", "all-or-nothing accuracy over a corpus directory");
  std::string corpusDir, jsonOut;
  eval->add_option("dir", corpusDir)->required();
  eval->add_option("--json", jsonOut, "write the machine-readable result here");

  auto* capture = app.add_subcommand("capture", "append sketches in a directory as templates");
  std::string label, captureDir, libraryOut;
  capture->add_option("label", label)->required();
  capture->add_option("dir", captureDir)->required();
  capture->add_option("out", libraryOut)->required();

  auto* gradeCmd = app.add_subcommand("grade", "grade a sketch against a lesson question");
  std::string gradeSketch, gradeLesson;
  int gradeNumber = 1;
  gradeCmd->add_option("sketch", gradeSketch)->required();
  gradeCmd->add_option("lesson", gradeLesson)->required();
  gradeCmd->add_option("question", gradeNumber)->required();

  auto* lesson = app.add_subcommand("lesson", "lesson file maintenance");
  lesson->require_subcommand(1);
  auto* validate = lesson->add_subcommand("validate", "report problems with a lesson file");
  std::string lessonFile, lessonOut;
  validate->add_option("file", lessonFile)->required();
  auto* renumberCmd = lesson->add_subcommand("renumber", "move a question to another slot");
  int from = 0, to = 0;
  renumberCmd->add_option("file", lessonFile)->required();
  renumberCmd->add_option("from", from)->required();
  renumberCmd->add_option("to", to)->required();
  renumberCmd->add_option("-o,--output", lessonOut, "write here instead of in place");
  auto* criteriaCmd = lesson->add_subcommand("criteria", "set the enabled criteria of a question");
  int criteriaNumber = 0;
  std::vector<std::string> criteria;
  criteriaCmd->add_option("file", lessonFile)->required();
  criteriaCmd->add_option("question", criteriaNumber)->required();
  criteriaCmd->add_option("criteria", criteria, "enabled criteria")->required();
  criteriaCmd->add_option("-o,--output", lessonOut, "write here instead of in place");

  auto* serve = app.add_subcommand("serve", "run the HTTP session service");
  int port = 8080;
  std::string host = "127.0.0.1", lessonsDir;
  serve->add_option("--port", port)->required();
  serve->add_option("--lessons", lessonsDir)->required();
  serve->add_option("--host", host);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*recognize) return run_recognize(sketchFile, templates);
    if (*eval) return run_eval(corpusDir, templates, jsonOut);
    if (*capture) return run_capture(label, captureDir, libraryOut);
    if (*gradeCmd) return run_grade(gradeSketch, gradeLesson, gradeNumber, templates);
    if (*validate) return run_validate(lessonFile);
    if (*renumberCmd) {
      save_lesson(renumber(load_lesson(lessonFile), from, to),
                  lessonOut.empty() ? lessonFile : lessonOut);
      return 0;
    }
    if (*criteriaCmd) {
      save_lesson(set_criteria(load_lesson(lessonFile), criteriaNumber, flags_from(criteria)),
                  lessonOut.empty() ? lessonFile : lessonOut);
      return 0;
    }
    if (*serve) return run_serve(port, host, lessonsDir, templates);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
