#include "notesketch/sketch_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "notesketch/error.hpp"
#include "notesketch/json_io.hpp"

namespace notesketch {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedSketch, where + ": " + what);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) malformed(where, "expected a number");
  return j.get<double>();
}

json parse_json(const std::string& text, ErrorCode code) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(code, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Stroke stroke_from_json(const json& j, const std::string& where, int fallbackId) {
  if (!j.is_object()) malformed(where, "expected an object");
  int id = fallbackId;
  if (j.contains("id")) {
    if (!j["id"].is_number_integer()) malformed(where + ".id", "expected an integer");
    id = j["id"].get<int>();
  }
  if (!j.contains("points") || !j["points"].is_array()) malformed(where + ".points", "missing array");
  std::vector<Point> points;
  const json& pts = j["points"];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string at = where + ".points[" + std::to_string(i) + "]";
    const json& p = pts[i];
    Point q;
    if (p.is_array()) {
      if (p.size() < 2 || p.size() > 3) malformed(at, "expected [x, y] or [x, y, t]");
      q.x = number_at(p[0], at + "[0]");
      q.y = number_at(p[1], at + "[1]");
      if (p.size() == 3) q.t = number_at(p[2], at + "[2]");
    } else if (p.is_object()) {
      if (!p.contains("x") || !p.contains("y")) malformed(at, "missing x or y");
      q.x = number_at(p["x"], at + ".x");
      q.y = number_at(p["y"], at + ".y");
      if (p.contains("t") && !p["t"].is_null()) q.t = number_at(p["t"], at + ".t");
    } else {
      malformed(at, "expected a point");
    }
    points.push_back(q);
  }
  try {
    return make_stroke(id, std::move(points));
  } catch (const Error& e) {
    malformed(where, e.what());
  }
}

json stroke_to_json(const Stroke& s) {
  json pts = json::array();
  for (const Point& p : s.points) {
    json q = {{"x", p.x}, {"y", p.y}};
    if (p.t) q["t"] = *p.t;
    pts.push_back(std::move(q));
  }
  return {{"id", s.id}, {"points", std::move(pts)}};
}

Sketch parse_sketch(const std::string& text) {
  const json j = parse_json(text, ErrorCode::MalformedSketch);
  if (!j.is_object()) malformed("$", "expected an object");
  Sketch sketch;
  if (j.contains("canvas")) {
    const json& c = j["canvas"];
    if (!c.is_object()) malformed("canvas", "expected an object");
    if (c.contains("width")) sketch.width = number_at(c["width"], "canvas.width");
    if (c.contains("height")) sketch.height = number_at(c["height"], "canvas.height");
    if (!(sketch.width > 0.0) || !(sketch.height > 0.0)) malformed("canvas", "size must be positive");
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) malformed("label", "expected a string");
    sketch.label = j["label"].get<std::string>();
  }
  if (j.contains("expect")) {
    if (!j["expect"].is_array()) malformed("expect", "expected an array");
    for (const json& t : j["expect"]) {
      if (!t.is_string()) malformed("expect", "expected strings");
      sketch.expect.push_back(t.get<std::string>());
    }
  }
  if (j.contains("strokes")) {
    const json& strokes = j["strokes"];
    if (!strokes.is_array()) malformed("strokes", "expected an array");
    for (std::size_t i = 0; i < strokes.size(); ++i) {
      sketch.strokes.push_back(
          stroke_from_json(strokes[i], "strokes[" + std::to_string(i) + "]", static_cast<int>(i) + 1));
    }
  }
  return sketch;
}

Sketch load_sketch(const std::filesystem::path& path) {
  try {
    return parse_sketch(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedSketch) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
    throw;
  }
}

std::string sketch_to_json(const Sketch& sketch, int indent) {
  json j;
  j["canvas"] = {{"width", sketch.width}, {"height", sketch.height}};
  if (sketch.label) j["label"] = *sketch.label;
  if (!sketch.expect.empty()) j["expect"] = sketch.expect;
  json strokes = json::array();
  for (const Stroke& s : sketch.strokes) strokes.push_back(stroke_to_json(s));
  j["strokes"] = std::move(strokes);
  return j.dump(indent);
}

void save_sketch(const Sketch& sketch, const std::filesystem::path& path) {
  write_text_file(path, sketch_to_json(sketch) + "\n");
}

TemplateLibrary parse_template_library(const std::string& text) {
  const json j = parse_json(text, ErrorCode::MalformedSketch);
  if (!j.is_object() || j.value("format", "") != "notesketch-templates") {
    malformed("$", "not a notesketch template library");
  }
  if (!j.contains("templates") || !j["templates"].is_array()) malformed("templates", "missing array");
  TemplateLibrary library;
  const json& list = j["templates"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = "templates[" + std::to_string(i) + "]";
    const json& t = list[i];
    if (!t.is_object() || !t.contains("label") || !t["label"].is_string()) {
      malformed(at + ".label", "missing string");
    }
    if (!t.contains("strokes") || !t["strokes"].is_array() || t["strokes"].empty()) {
      malformed(at + ".strokes", "missing non-empty array");
    }
    std::vector<Stroke> strokes;
    for (std::size_t k = 0; k < t["strokes"].size(); ++k) {
      json wrapped = {{"id", static_cast<int>(k) + 1}, {"points", t["strokes"][k]}};
      strokes.push_back(stroke_from_json(wrapped, at + ".strokes[" + std::to_string(k) + "]", 0));
    }
    try {
      library.add(t["label"].get<std::string>(), std::move(strokes));
    } catch (const Error& e) {
      malformed(at, e.what());
    }
  }
  return library;
}

TemplateLibrary load_template_library(const std::filesystem::path& path) {
  return parse_template_library(read_text_file(path));
}

std::string template_library_to_json(const TemplateLibrary& library) {
  json list = json::array();
  for (const auto& [label, templates] : library.classes()) {
    for (const Template& t : templates) {
      json strokes = json::array();
      for (const Stroke& s : t.source) {
        json pts = json::array();
        for (const Point& p : s.points) pts.push_back({p.x, p.y});
        strokes.push_back(std::move(pts));
      }
      list.push_back({{"label", label}, {"strokes", std::move(strokes)}});
    }
  }
  json j = {{"format", "notesketch-templates"}, {"version", 1}, {"templates", std::move(list)}};
  return j.dump();
}

void save_template_library(const TemplateLibrary& library, const std::filesystem::path& path) {
  write_text_file(path, template_library_to_json(library) + "\n");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("NOTESKETCH_DATA"); env != nullptr && *env != '\0') return env;
  return NOTESKETCH_DATA_DIR;
}

}  // namespace notesketch
