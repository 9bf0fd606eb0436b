#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "notesketch/config.hpp"
#include "notesketch/glyph_matcher.hpp"
#include "notesketch/notes.hpp"
#include "notesketch/staff.hpp"
#include "notesketch/symbols.hpp"
#include "notesketch/template_matcher.hpp"

namespace notesketch {

// The live interpretation of one sketch. Every ingested stroke id belongs to
// exactly one of: the staff, a glyph, a component, `pending`, or
// `unrecognized` (pendings pushed out by the buffer cap).
struct Scene {
  double canvasWidth = 1200.0;
  double canvasHeight = 600.0;
  std::optional<StaffModel> staff;
  std::vector<int> staffStrokeIds;         // top to bottom once assembled
  std::vector<Glyph> glyphs;               // creation order
  std::vector<NoteComponent> components;   // creation order
  std::optional<TimeSignature> timeSignature;
  std::vector<int> pending;                // ingestion order
  std::vector<int> unrecognized;
  std::vector<Stroke> rawStrokes;          // ingestion order
  std::vector<Note> notes;
  std::vector<Measure> measures;
  std::vector<std::string> diagnostics;
  int nextSymbolId = 1;

  const Stroke* stroke(int id) const;
  const Glyph* glyph(int id) const;
  std::optional<Clef> clef() const;
  // Key accidentals left to right.
  std::vector<Glyph> key_signature() const;
};

enum class SceneEventKind { SymbolRecognized, SymbolRevoked, StaffAssembled, Pending, Cleared };
std::string_view to_string(SceneEventKind kind);

struct SceneEvent {
  SceneEventKind kind = SceneEventKind::Pending;
  int symbolId = 0;             // glyph or component id; 0 for staff/pending/cleared
  std::string label;            // glyph or component kind name, "staff", ...
  std::vector<int> strokeIds;

  friend bool operator==(const SceneEvent&, const SceneEvent&) = default;
};

// Empty string when the partition holds, otherwise a description of the
// first violation.
std::string check_partition(const Scene& scene);

// Called once per classifier attempt with the stage name and the candidate
// stroke ids, in the order the attempts happen.
using TraceFn = std::function<void(std::string_view stage, const std::vector<int>& strokeIds)>;

// Runs the classifier hierarchy over an incremental stroke stream:
//   staff, clef, key, beat digits, rest, note head, measure bar, components.
// Each new stroke is tried alone and with pending strokes near it (groups of
// up to three, smaller groups first, more recent partners first); the first
// stage that accepts wins. Acceptances trigger re-examination of nearby
// pending strokes, since a symbol can supply the context a stroke was
// missing.
class Recognizer {
 public:
  Recognizer(std::shared_ptr<const TemplateLibrary> library, RecognitionConfig config = {},
             double canvasWidth = 1200.0, double canvasHeight = 600.0);

  // Throws DuplicateStroke when the id is already in the scene and
  // MalformedSketch for strokes make_stroke() rejects.
  std::vector<SceneEvent> add_stroke(Stroke stroke);
  // Removes the most recent stroke and replays the rest. Throws NothingToUndo.
  std::vector<SceneEvent> undo();
  std::vector<SceneEvent> clear();

  const Scene& scene() const { return scene_; }
  const RecognitionConfig& config() const { return config_; }
  void set_trace(TraceFn trace) { trace_ = std::move(trace); }

 private:
  void ingest(Stroke stroke, std::vector<SceneEvent>& events);
  void settle(std::vector<int> work, std::vector<SceneEvent>& events);
  std::optional<BoundingBox> attempt(int strokeId, std::vector<SceneEvent>& events);
  bool try_staff(int strokeId, std::vector<SceneEvent>& events);
  std::optional<BoundingBox> try_stages(int strokeId, std::vector<SceneEvent>& events);
  std::vector<std::vector<int>> groups_for(int strokeId) const;
  std::vector<Stroke> strokes_of(const std::vector<int>& ids) const;
  void claim(const std::vector<int>& ids);
  void enforce_cap(std::vector<SceneEvent>& events);
  void reassemble();
  void trace(std::string_view stage, const std::vector<int>& ids) const;

  std::shared_ptr<const TemplateLibrary> library_;
  RecognitionConfig config_;
  std::shared_ptr<MatchMemo> memo_;
  GlyphMatcher matcher_;
  Scene scene_;
  TraceFn trace_;
};

// Builds the classifier context from the scene's current symbols. Requires
// an assembled staff.
RecognitionContext make_context(const Scene& scene);

// Recognizes a whole stroke sequence in order.
Scene recognize_strokes(std::shared_ptr<const TemplateLibrary> library,
                        const std::vector<Stroke>& strokes, const RecognitionConfig& config = {},
                        double canvasWidth = 1200.0, double canvasHeight = 600.0);

// Which symbol (by label) each stroke ended up in: "staff", glyph/component
// kind names, "pending" or "unrecognized".
std::string stroke_label(const Scene& scene, int strokeId);

}  // namespace notesketch
