#include "notesketch/symbolic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "notesketch/error.hpp"
#include "notesketch/sketch_io.hpp"

namespace notesketch {

namespace pt = boost::property_tree;

SymbolicScene to_symbolic(const Scene& scene) {
  SymbolicScene out;
  if (scene.staff) out.staff = SymbolicStaff{scene.staff->lineYs, scene.staff->step};
  out.clef = scene.clef();
  for (const Glyph& g : scene.key_signature()) {
    out.key.push_back({g.kind == GlyphKind::Sharp ? Accidental::Sharp : Accidental::Flat,
                       g.position.value_or(0)});
  }
  if (scene.timeSignature) {
    out.time = SymbolicTime{scene.timeSignature->numerator, scene.timeSignature->denominator};
  }
  std::vector<const Glyph*> digits;
  for (const Glyph& g : scene.glyphs) {
    if (g.kind != GlyphKind::Digit) continue;
    const bool fused = scene.timeSignature && (scene.timeSignature->numeratorGlyph == g.id ||
                                               scene.timeSignature->denominatorGlyph == g.id);
    if (!fused) digits.push_back(&g);
  }
  std::stable_sort(digits.begin(), digits.end(),
                   [](const Glyph* a, const Glyph* b) { return a->bbox.minX < b->bbox.minX; });
  for (const Glyph* g : digits) out.digits.push_back(g->digit);

  for (const Note& n : scene.notes) {
    Element e;
    e.kind = ElementKind::Note;
    e.x = n.x;
    e.position = n.position;
    e.pitch = n.pitch;
    e.accidental = n.accidental;
    e.durationBeats = n.durationBeats;
    out.elements.push_back(std::move(e));
  }
  for (const Glyph& g : scene.glyphs) {
    Element e;
    e.x = g.bbox.centerX();
    if (auto rest = rest_kind_of(g.kind)) {
      e.kind = ElementKind::Rest;
      e.rest = *rest;
    } else if (is_bar(g.kind)) {
      e.kind = ElementKind::Bar;
      e.bar = g.kind == GlyphKind::BarDouble ? BarKind::Double : BarKind::Single;
    } else {
      continue;
    }
    out.elements.push_back(std::move(e));
  }
  std::stable_sort(out.elements.begin(), out.elements.end(),
                   [](const Element& a, const Element& b) { return a.x < b.x; });
  return out;
}

std::vector<SymbolicMeasure> measures_of(const SymbolicScene& scene) {
  std::vector<SymbolicMeasure> out;
  SymbolicMeasure current;
  current.index = 1;
  for (std::size_t i = 0; i < scene.elements.size(); ++i) {
    const Element& e = scene.elements[i];
    if (e.kind == ElementKind::Bar) {
      out.push_back(current);
      current = SymbolicMeasure{};
      current.index = static_cast<int>(out.size()) + 1;
      continue;
    }
    current.elements.push_back(i);
    if (e.kind == ElementKind::Note) current.beats += e.durationBeats.value_or(0.0);
    if (e.kind == ElementKind::Rest) current.beats += rest_beats(e.rest);
  }
  if (!current.elements.empty()) out.push_back(current);
  return out;
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string note_token(const Element& note) {
  std::string t = "note:";
  t += note.pitch.empty() ? "p" + std::to_string(note.position) : note.pitch;
  t += ":";
  t += note.durationBeats ? format_number(*note.durationBeats) : "?";
  if (note.accidental) t += ":" + std::string(to_string(*note.accidental));
  return t;
}

std::vector<std::string> scene_tokens(const SymbolicScene& scene) {
  std::vector<std::string> out;
  if (scene.staff) out.push_back("staff");
  if (scene.clef) out.push_back("clef:" + std::string(to_string(*scene.clef)));
  for (const KeyAccidental& k : scene.key) {
    out.push_back("key:" + std::string(to_string(k.accidental)) + "@" + std::to_string(k.position));
  }
  if (scene.time) {
    out.push_back("time:" + std::to_string(scene.time->numerator) + "/" +
                  std::to_string(scene.time->denominator));
  }
  for (int d : scene.digits) out.push_back("digit:" + std::to_string(d));
  for (const Element& e : scene.elements) {
    switch (e.kind) {
      case ElementKind::Note: out.push_back(note_token(e)); break;
      case ElementKind::Rest: out.push_back("rest:" + std::string(to_string(e.rest))); break;
      case ElementKind::Bar: out.push_back("bar:" + std::string(to_string(e.bar))); break;
    }
  }
  return out;
}

// --- XML -------------------------------------------------------------------

namespace {

constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::MalformedDocument, path + ": " + what);
}

const pt::ptree* attributes(const pt::ptree& node) {
  auto it = node.find("<xmlattr>");
  return it == node.not_found() ? nullptr : &it->second;
}

std::optional<std::string> attr(const pt::ptree& node, const std::string& name) {
  const pt::ptree* a = attributes(node);
  if (a == nullptr) return std::nullopt;
  auto it = a->find(name);
  if (it == a->not_found()) return std::nullopt;
  return it->second.data();
}

std::string required(const pt::ptree& node, const std::string& name, const std::string& path) {
  auto v = attr(node, name);
  if (!v) fail(path, "missing attribute '" + name + "'");
  return *v;
}

int parse_int(const std::string& text, const std::string& path, const std::string& name) {
  int v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    fail(path, "attribute '" + name + "' is not an integer: '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& path, const std::string& name) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    fail(path, "attribute '" + name + "' is not a number: '" + text + "'");
  }
  return v;
}

void check_attributes(const pt::ptree& node, std::initializer_list<std::string_view> allowed,
                      const std::string& path) {
  const pt::ptree* a = attributes(node);
  if (a == nullptr) return;
  for (const auto& [name, value] : *a) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      fail(path, "unknown attribute '" + name + "'");
    }
  }
}

void check_pitch(const std::string& pitch, const std::string& path) {
  if (pitch.empty()) return;
  const bool ok = pitch.size() >= 2 && pitch[0] >= 'A' && pitch[0] <= 'G' &&
                  std::all_of(pitch.begin() + 1, pitch.end(), [](char c) {
                    return (c >= '0' && c <= '9') || c == '-';
                  });
  if (!ok) fail(path, "attribute 'pitch' is not a pitch name: '" + pitch + "'");
}

}  // namespace

std::string serialize_scene(const SymbolicScene& scene) {
  pt::ptree doc;
  pt::ptree& root = doc.add("scene", "");
  root.put("<xmlattr>.version", kSchemaVersion);
  if (scene.staff) {
    pt::ptree& staff = root.add("staff", "");
    staff.put("<xmlattr>.step", format_number(scene.staff->step));
    for (double y : scene.staff->lineYs) {
      staff.add("line", "").put("<xmlattr>.y", format_number(y));
    }
  }
  if (scene.clef) root.add("clef", "").put("<xmlattr>.kind", std::string(to_string(*scene.clef)));
  if (!scene.key.empty()) {
    pt::ptree& key = root.add("key", "");
    for (const KeyAccidental& k : scene.key) {
      pt::ptree& a = key.add("accidental", "");
      a.put("<xmlattr>.kind", std::string(to_string(k.accidental)));
      a.put("<xmlattr>.position", k.position);
    }
  }
  if (scene.time) {
    pt::ptree& t = root.add("time", "");
    t.put("<xmlattr>.numerator", scene.time->numerator);
    t.put("<xmlattr>.denominator", scene.time->denominator);
  }
  for (int d : scene.digits) root.add("digit", "").put("<xmlattr>.value", d);
  for (std::size_t i = 0; i < scene.elements.size(); ++i) {
    const Element& e = scene.elements[i];
    const char* tag = e.kind == ElementKind::Note ? "note" : e.kind == ElementKind::Rest ? "rest" : "bar";
    pt::ptree& node = root.add(tag, "");
    node.put("<xmlattr>.order", i);
    node.put("<xmlattr>.x", format_number(e.x));
    if (e.kind == ElementKind::Note) {
      node.put("<xmlattr>.position", e.position);
      if (!e.pitch.empty()) node.put("<xmlattr>.pitch", e.pitch);
      if (e.durationBeats) node.put("<xmlattr>.durationBeats", format_number(*e.durationBeats));
      if (e.accidental) node.put("<xmlattr>.accidental", std::string(to_string(*e.accidental)));
    } else if (e.kind == ElementKind::Rest) {
      node.put("<xmlattr>.kind", std::string(to_string(e.rest)));
    } else {
      node.put("<xmlattr>.kind", std::string(to_string(e.bar)));
    }
  }
  std::ostringstream out;
  pt::write_xml(out, doc, pt::xml_writer_make_settings<std::string>(' ', 2));
  return out.str();
}

SymbolicScene deserialize_scene(const std::string& xml) {
  pt::ptree doc;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedDocument,
                "line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto rootIt = doc.find("scene");
  if (rootIt == doc.not_found()) fail("/", "root element 'scene' missing");
  for (const auto& [name, child] : doc) {
    if (name != "scene" && name != "<xmlcomment>") fail("/", "unexpected top-level element '" + name + "'");
  }
  const pt::ptree& root = rootIt->second;
  check_attributes(root, {"version"}, "scene");
  const int version = parse_int(required(root, "version", "scene"), "scene", "version");
  if (version != kSchemaVersion) fail("scene", "unsupported version " + std::to_string(version));

  SymbolicScene out;
  std::map<std::string, int> seen;
  std::vector<std::pair<int, Element>> ordered;
  for (const auto& [name, node] : root) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    const std::string path = "scene/" + name + "[" + std::to_string(++seen[name]) + "]";
    if (name == "staff") {
      if (out.staff) fail(path, "second staff element");
      check_attributes(node, {"step"}, path);
      SymbolicStaff staff;
      staff.step = parse_double(required(node, "step", path), path, "step");
      int lines = 0;
      for (const auto& [lname, line] : node) {
        if (lname == "<xmlattr>" || lname == "<xmlcomment>") continue;
        const std::string lpath = path + "/" + lname + "[" + std::to_string(lines + 1) + "]";
        if (lname != "line") fail(lpath, "unknown element '" + lname + "'");
        if (lines == 5) fail(lpath, "more than five lines");
        check_attributes(line, {"y"}, lpath);
        staff.lineYs[lines++] = parse_double(required(line, "y", lpath), lpath, "y");
      }
      if (lines != 5) fail(path, "expected five line elements, found " + std::to_string(lines));
      out.staff = staff;
    } else if (name == "clef") {
      if (out.clef) fail(path, "second clef element");
      check_attributes(node, {"kind"}, path);
      const std::string kind = required(node, "kind", path);
      out.clef = parse_clef(kind);
      if (!out.clef) fail(path, "unknown clef kind '" + kind + "'");
    } else if (name == "key") {
      if (!out.key.empty()) fail(path, "second key element");
      check_attributes(node, {}, path);
      int n = 0;
      for (const auto& [aname, acc] : node) {
        if (aname == "<xmlattr>" || aname == "<xmlcomment>") continue;
        const std::string apath = path + "/" + aname + "[" + std::to_string(++n) + "]";
        if (aname != "accidental") fail(apath, "unknown element '" + aname + "'");
        check_attributes(acc, {"kind", "position"}, apath);
        const std::string kind = required(acc, "kind", apath);
        auto a = parse_accidental(kind);
        if (!a) fail(apath, "unknown accidental kind '" + kind + "'");
        out.key.push_back({*a, parse_int(required(acc, "position", apath), apath, "position")});
      }
    } else if (name == "time") {
      if (out.time) fail(path, "second time element");
      check_attributes(node, {"numerator", "denominator"}, path);
      SymbolicTime t;
      t.numerator = parse_int(required(node, "numerator", path), path, "numerator");
      t.denominator = parse_int(required(node, "denominator", path), path, "denominator");
      if (t.numerator < 1) fail(path, "numerator must be positive");
      if (t.denominator != 1 && t.denominator != 2 && t.denominator != 4 && t.denominator != 8) {
        fail(path, "denominator must be 1, 2, 4 or 8");
      }
      out.time = t;
    } else if (name == "digit") {
      check_attributes(node, {"value"}, path);
      const int v = parse_int(required(node, "value", path), path, "value");
      if (v < 0 || v > 9) fail(path, "digit out of range");
      out.digits.push_back(v);
    } else if (name == "note" || name == "rest" || name == "bar") {
      Element e;
      const int order = parse_int(required(node, "order", path), path, "order");
      e.x = parse_double(required(node, "x", path), path, "x");
      if (name == "note") {
        check_attributes(node, {"order", "x", "position", "pitch", "durationBeats", "accidental"},
                         path);
        e.kind = ElementKind::Note;
        e.position = parse_int(required(node, "position", path), path, "position");
        e.pitch = attr(node, "pitch").value_or("");
        check_pitch(e.pitch, path);
        if (auto d = attr(node, "durationBeats")) {
          e.durationBeats = parse_double(*d, path, "durationBeats");
          if (!(*e.durationBeats > 0.0)) fail(path, "durationBeats must be positive");
        }
        if (auto a = attr(node, "accidental")) {
          e.accidental = parse_accidental(*a);
          if (!e.accidental) fail(path, "unknown accidental '" + *a + "'");
        }
      } else if (name == "rest") {
        check_attributes(node, {"order", "x", "kind"}, path);
        e.kind = ElementKind::Rest;
        const std::string kind = required(node, "kind", path);
        auto r = parse_rest_kind(kind);
        if (!r) fail(path, "unknown rest kind '" + kind + "'");
        e.rest = *r;
      } else {
        check_attributes(node, {"order", "x", "kind"}, path);
        e.kind = ElementKind::Bar;
        const std::string kind = required(node, "kind", path);
        auto b = parse_bar_kind(kind);
        if (!b) fail(path, "unknown bar kind '" + kind + "'");
        e.bar = *b;
      }
      ordered.emplace_back(order, std::move(e));
    } else {
      fail(path, "unknown element '" + name + "'");
    }
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (ordered[i].first != static_cast<int>(i)) {
      fail("scene", "element order attributes must run 0.." + std::to_string(ordered.size() - 1));
    }
    out.elements.push_back(std::move(ordered[i].second));
  }
  return out;
}

SymbolicScene load_scene_document(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return deserialize_scene(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace notesketch
