#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "notesketch/geometry.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/symbolic.hpp"
#include "notesketch/symbols.hpp"

namespace notesketch::synth {

// Hand-drawing simulator. Glyphs are spline outlines in staff-step units,
// perturbed per drawing, sampled sparsely like a tablet at moderate speed,
// then jittered: each symbol is scaled about its centre and every point gets
// Gaussian noise.
struct PenOptions {
  double noise = 2.0;          // point noise sigma, px
  double scaleJitter = 0.10;   // per-symbol scale in [1 - j, 1 + j]
  double shapeJitter = 0.04;   // control point displacement sigma, steps
  double minSpacing = 7.0;     // sample spacing range, px
  double maxSpacing = 11.0;
};

struct StaffLayout {
  double top = 200.0;
  double step = 30.0;
  double left = 20.0;
  double right = 1180.0;

  double line_y(int index) const { return top + index * step; }   // 0 = top line
  double position_y(int position) const { return top + 4 * step - position * step / 2.0; }
};

struct NoteSpec {
  bool filled = true;
  bool stem = true;
  bool flag = false;
  bool dot = false;
  std::optional<Accidental> accidental;
  bool blobFill = false;       // filled head as one dense scribble
};

// Where a drawn note's parts ended up, for attaching beams.
struct DrawnNote {
  BoundingBox head;
  std::optional<Point> stemEnd;   // the stem's free end
};

class Composer {
 public:
  explicit Composer(std::uint64_t seed, PenOptions options = {}, double canvasWidth = 1200.0,
                    double canvasHeight = 600.0);

  std::mt19937_64& rng() { return rng_; }
  const StaffLayout& layout() const { return layout_; }

  // Draws five lines; `stepScale` multiplies the nominal step, `spacingJitter`
  // perturbs each gap by up to that fraction.
  void staff(double stepScale = 1.0, double spacingJitter = 0.05, double maxSlope = 0.02);
  // Places later symbols on an undrawn staff (template capture).
  void set_layout(StaffLayout layout) { layout_ = layout; }

  BoundingBox treble_clef(double x);
  BoundingBox bass_clef(double x);
  BoundingBox key_accidental(Accidental kind, int position, double left);
  BoundingBox digit(int value, double centerX, int centerPosition);
  BoundingBox rest(RestKind kind, double centerX);
  DrawnNote note(double centerX, int position, const NoteSpec& spec);
  void beam(const DrawnNote& a, const DrawnNote& b);
  BoundingBox bar(double x, BarKind kind);

  // Isolated glyph for template capture, drawn on the current layout.
  void glyph(const std::string& label, double x);

  Sketch sketch() const;

 private:
  using Outline = std::vector<std::vector<Point>>;   // pieces joined at corners
  std::vector<Point> trace(const Outline& outline, double ox, double oy, double unit);
  Stroke make(std::vector<Point> points);
  Stroke tap(double x, double y);
  // Scales the group about its centre and adds noise; returns the bbox.
  BoundingBox commit(std::vector<Stroke> group, bool scale = true);

  std::mt19937_64 rng_;
  PenOptions options_;
  StaffLayout layout_;
  double width_;
  double height_;
  double clock_ = 0.0;
  int nextId_ = 1;
  std::vector<Stroke> strokes_;
};

}  // namespace notesketch::synth

namespace notesketch::synth {

// Classes of the bundled evaluation corpus, one directory each.
const std::vector<std::string>& corpus_classes();
// One labelled sample with its expected recognition tokens.
Sketch corpus_sample(const std::string& cls, int index, PenOptions options = {});

// Template classes and one isolated capture of a class.
const std::vector<std::string>& template_classes();
Sketch template_capture(const std::string& label, int index, PenOptions options = {});

}  // namespace notesketch::synth

namespace notesketch::synth {

// Idealized engraving of a scene, used for solution images.
std::string render_svg(const SymbolicScene& scene);

// Writes the bundled lessons into `dir`: <id>.json, answers/*.xml,
// images/*.svg and the drawings the answers were recognized from,
// sketches/*.json. Throws when a drawing is not recognized as intended.
void write_lessons(const std::filesystem::path& dir, std::shared_ptr<const TemplateLibrary> library);

}  // namespace notesketch::synth
