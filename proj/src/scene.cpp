#include "notesketch/scene.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "notesketch/error.hpp"
#include "notesketch/glyphs.hpp"

namespace notesketch {

const Stroke* Scene::stroke(int id) const {
  for (const Stroke& s : rawStrokes) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const Glyph* Scene::glyph(int id) const {
  for (const Glyph& g : glyphs) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

std::optional<Clef> Scene::clef() const {
  for (const Glyph& g : glyphs) {
    if (g.kind == GlyphKind::TrebleClef) return Clef::Treble;
    if (g.kind == GlyphKind::BassClef) return Clef::Bass;
  }
  return std::nullopt;
}

std::vector<Glyph> Scene::key_signature() const {
  std::vector<Glyph> key;
  for (const Glyph& g : glyphs) {
    if (is_key_accidental(g.kind)) key.push_back(g);
  }
  std::stable_sort(key.begin(), key.end(),
                   [](const Glyph& a, const Glyph& b) { return a.bbox.minX < b.bbox.minX; });
  return key;
}

std::string_view to_string(SceneEventKind kind) {
  switch (kind) {
    case SceneEventKind::SymbolRecognized: return "symbol_recognized";
    case SceneEventKind::SymbolRevoked: return "symbol_revoked";
    case SceneEventKind::StaffAssembled: return "staff_assembled";
    case SceneEventKind::Pending: return "pending";
    case SceneEventKind::Cleared: return "cleared";
  }
  return "unknown";
}

std::string check_partition(const Scene& scene) {
  std::map<int, int> owners;
  for (const Stroke& s : scene.rawStrokes) {
    if (owners.count(s.id) != 0) return "stroke " + std::to_string(s.id) + " ingested twice";
    owners[s.id] = 0;
  }
  auto own = [&owners](int id, const std::string& where) -> std::string {
    auto it = owners.find(id);
    if (it == owners.end()) return where + " references unknown stroke " + std::to_string(id);
    if (++it->second > 1) return "stroke " + std::to_string(id) + " owned twice (" + where + ")";
    return {};
  };
  for (int id : scene.staffStrokeIds) {
    if (auto e = own(id, "staff"); !e.empty()) return e;
  }
  for (const Glyph& g : scene.glyphs) {
    for (int id : g.strokeIds) {
      if (auto e = own(id, "glyph " + std::to_string(g.id)); !e.empty()) return e;
    }
  }
  for (const NoteComponent& c : scene.components) {
    for (int id : c.strokeIds) {
      if (auto e = own(id, "component " + std::to_string(c.id)); !e.empty()) return e;
    }
  }
  for (int id : scene.pending) {
    if (auto e = own(id, "pending"); !e.empty()) return e;
  }
  for (int id : scene.unrecognized) {
    if (auto e = own(id, "unrecognized"); !e.empty()) return e;
  }
  for (const auto& [id, count] : owners) {
    if (count == 0) return "stroke " + std::to_string(id) + " has no owner";
  }
  if (scene.staff.has_value() != (scene.staffStrokeIds.size() == 5)) {
    return "staff strokes do not match staff state";
  }
  return {};
}

RecognitionContext make_context(const Scene& scene) {
  RecognitionContext ctx;
  ctx.staff = *scene.staff;
  ctx.hasTimeSignature = scene.timeSignature.has_value();
  for (const Glyph& g : scene.glyphs) {
    if (is_clef(g.kind)) {
      ctx.clef = g;
    } else if (is_key_accidental(g.kind)) {
      ctx.keyAccidentals.push_back(g);
    } else if (g.kind == GlyphKind::Digit) {
      ctx.digits.push_back(g);
      const bool fused = scene.timeSignature && (scene.timeSignature->numeratorGlyph == g.id ||
                                                 scene.timeSignature->denominatorGlyph == g.id);
      if (!fused) ctx.pendingDigits.push_back(g);
    } else if (is_bar(g.kind)) {
      ctx.bars.push_back(g);
    } else if (is_rest(g.kind)) {
      ctx.rests.push_back(g);
    } else if (is_note_head(g.kind)) {
      HeadInfo h;
      h.id = g.id;
      h.bbox = g.bbox;
      h.position = g.position.value_or(0);
      h.filled = g.kind == GlyphKind::NoteHeadFilled;
      ctx.heads.push_back(h);
    }
  }
  for (const NoteComponent& c : scene.components) {
    if (c.kind != ComponentKind::Stem) continue;
    for (HeadInfo& h : ctx.heads) {
      if (h.id == c.anchor) h.hasStem = true;
    }
    StemInfo s;
    s.id = c.id;
    s.headId = c.anchor;
    s.freeEnd = c.freeEnd.value_or(Point{c.bbox.centerX(), c.bbox.minY, std::nullopt});
    const bool freeIsTop = s.freeEnd.y <= c.bbox.centerY();
    s.base = Point{s.freeEnd.x, freeIsTop ? c.bbox.maxY : c.bbox.minY, std::nullopt};
    ctx.stems.push_back(s);
  }
  for (const NoteComponent& c : scene.components) {
    for (StemInfo& s : ctx.stems) {
      const bool on = c.anchor == s.id || (c.secondAnchor && *c.secondAnchor == s.id);
      if (!on) continue;
      if (c.kind == ComponentKind::Flag) ++s.flags;
      if (c.kind == ComponentKind::Beam) ++s.beams;
    }
  }
  ctx.components = scene.components;
  return ctx;
}

namespace {

// Classifiers reject degenerate input by throwing; inside the hierarchy that
// simply means "not this symbol".
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateStroke || e.code() == ErrorCode::EmptySet) return {};
    throw;
  }
}

double box_gap(const BoundingBox& a, const BoundingBox& b) {
  const double dx = std::max({a.minX - b.maxX, 0.0, b.minX - a.maxX});
  const double dy = std::max({a.minY - b.maxY, 0.0, b.minY - a.maxY});
  return std::hypot(dx, dy);
}

void erase_ids(std::vector<int>& from, const std::vector<int>& ids) {
  std::erase_if(from, [&ids](int id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); });
}

SceneEvent recognized(int id, std::string_view label, std::vector<int> strokes) {
  return {SceneEventKind::SymbolRecognized, id, std::string(label), std::move(strokes)};
}

}  // namespace

Recognizer::Recognizer(std::shared_ptr<const TemplateLibrary> library, RecognitionConfig config,
                       double canvasWidth, double canvasHeight)
    : library_(std::move(library)),
      config_(config),
      memo_(std::make_shared<MatchMemo>()),
      matcher_(*library_, memo_) {
  scene_.canvasWidth = canvasWidth;
  scene_.canvasHeight = canvasHeight;
}

void Recognizer::trace(std::string_view stage, const std::vector<int>& ids) const {
  if (trace_) trace_(stage, ids);
}

std::vector<SceneEvent> Recognizer::add_stroke(Stroke stroke) {
  std::vector<SceneEvent> events;
  ingest(std::move(stroke), events);
  return events;
}

void Recognizer::ingest(Stroke stroke, std::vector<SceneEvent>& events) {
  Stroke s = make_stroke(stroke.id, std::move(stroke.points));
  if (scene_.stroke(s.id) != nullptr) {
    throw Error(ErrorCode::DuplicateStroke, "stroke id " + std::to_string(s.id) + " already added");
  }
  const int id = s.id;
  scene_.rawStrokes.push_back(std::move(s));
  scene_.pending.push_back(id);
  settle({id}, events);
  if (std::find(scene_.pending.begin(), scene_.pending.end(), id) != scene_.pending.end()) {
    events.push_back({SceneEventKind::Pending, 0, "pending", {id}});
  }
  enforce_cap(events);
  reassemble();
}

void Recognizer::settle(std::vector<int> work, std::vector<SceneEvent>& events) {
  std::deque<int> queue(work.begin(), work.end());
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    if (std::find(scene_.pending.begin(), scene_.pending.end(), id) == scene_.pending.end()) continue;
    const bool hadStaff = scene_.staff.has_value();
    auto box = attempt(id, events);
    if (!box) continue;
    const double radius = scene_.staff ? config_.cascadeRadius * scene_.staff->step : 0.0;
    for (int other : scene_.pending) {
      if (std::find(queue.begin(), queue.end(), other) != queue.end()) continue;
      const Stroke* s = scene_.stroke(other);
      if (!hadStaff || box_gap(*box, bounding_box(s->points)) <= radius) queue.push_back(other);
    }
  }
}

std::optional<BoundingBox> Recognizer::attempt(int strokeId, std::vector<SceneEvent>& events) {
  if (!scene_.staff) {
    if (!try_staff(strokeId, events)) return std::nullopt;
    const StaffModel& st = *scene_.staff;
    return BoundingBox{st.left, st.top(), st.right, st.bottom()};
  }
  return try_stages(strokeId, events);
}

bool Recognizer::try_staff(int strokeId, std::vector<SceneEvent>& events) {
  trace("staff", {strokeId});
  const Stroke* s = scene_.stroke(strokeId);
  if (!guarded([&] { return classify_staff_line(*s, scene_.canvasWidth, config_); })) return false;

  std::vector<StaffLineCandidate> candidates;
  for (int id : scene_.pending) {
    auto c = guarded([&] { return classify_staff_line(*scene_.stroke(id), scene_.canvasWidth, config_); });
    if (c) candidates.push_back(*c);
  }
  if (candidates.size() < 5) return false;
  candidates.erase(candidates.begin(), candidates.end() - 5);
  try {
    scene_.staff = assemble_staff(candidates, config_);
  } catch (const Error& e) {
    scene_.diagnostics.push_back(std::string("staff not assembled: ") + e.what());
    return false;
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.meanY < b.meanY; });
  scene_.staffStrokeIds.clear();
  for (const auto& c : candidates) scene_.staffStrokeIds.push_back(c.strokeId);
  claim(scene_.staffStrokeIds);
  events.push_back({SceneEventKind::StaffAssembled, 0, "staff", scene_.staffStrokeIds});
  return true;
}

std::vector<std::vector<int>> Recognizer::groups_for(int strokeId) const {
  const Stroke* s = scene_.stroke(strokeId);
  const BoundingBox box = bounding_box(s->points);
  const double radius = config_.cascadeRadius * scene_.staff->step;
  // Partners, most recent first.
  std::vector<int> partners;
  for (auto it = scene_.pending.rbegin(); it != scene_.pending.rend(); ++it) {
    if (*it == strokeId) continue;
    if (box_gap(box, bounding_box(scene_.stroke(*it)->points)) <= radius) partners.push_back(*it);
  }
  std::map<int, std::size_t> order;
  for (std::size_t i = 0; i < scene_.rawStrokes.size(); ++i) order[scene_.rawStrokes[i].id] = i;
  auto ingestion_sorted = [&order](std::vector<int> ids) {
    std::sort(ids.begin(), ids.end(), [&order](int a, int b) { return order[a] < order[b]; });
    return ids;
  };

  std::vector<std::vector<int>> groups{{strokeId}};
  const int maxSize = std::max(1, config_.maxCombination);
  if (maxSize >= 2) {
    for (int p : partners) groups.push_back(ingestion_sorted({strokeId, p}));
  }
  if (maxSize >= 3) {
    for (std::size_t i = 0; i < partners.size(); ++i) {
      for (std::size_t j = i + 1; j < partners.size(); ++j) {
        groups.push_back(ingestion_sorted({strokeId, partners[i], partners[j]}));
      }
    }
  }
  return groups;
}

std::vector<Stroke> Recognizer::strokes_of(const std::vector<int>& ids) const {
  std::vector<Stroke> out;
  for (int id : ids) out.push_back(*scene_.stroke(id));
  return out;
}

void Recognizer::claim(const std::vector<int>& ids) { erase_ids(scene_.pending, ids); }

std::optional<BoundingBox> Recognizer::try_stages(int strokeId, std::vector<SceneEvent>& events) {
  const RecognitionContext ctx = make_context(scene_);
  const std::vector<std::vector<int>> groups = groups_for(strokeId);
  const Stroke& single = *scene_.stroke(strokeId);

  auto add_glyph = [&](Glyph g) {
    g.id = scene_.nextSymbolId++;
    claim(g.strokeIds);
    events.push_back(recognized(g.id, to_string(g.kind), g.strokeIds));
    const BoundingBox box = g.bbox;
    scene_.glyphs.push_back(std::move(g));
    return box;
  };
  auto extend_glyph = [&](int glyphId, int stroke, std::optional<GlyphKind> kind) {
    for (Glyph& g : scene_.glyphs) {
      if (g.id != glyphId) continue;
      g.strokeIds.push_back(stroke);
      if (kind) g.kind = *kind;
      claim({stroke});
      events.push_back(recognized(g.id, to_string(g.kind), g.strokeIds));
      return g.bbox;
    }
    throw Error(ErrorCode::IoError, "internal: glyph " + std::to_string(glyphId) + " vanished");
  };

  // Runs one stage over the groups. Geometric acceptances win at once;
  // template-scored ones compete, and the group explaining more strokes
  // wins (then the better score), so a half-drawn symbol does not claim the
  // new stroke when its pending other half is available.
  auto run_stage = [&]<typename T>(std::string_view name, auto&& classify, auto&& score_of)
      -> std::optional<T> {
    std::optional<T> best;
    std::size_t bestSize = 0;
    double bestScore = 0.0;
    for (const auto& ids : groups) {
      trace(name, ids);
      const auto strokes = strokes_of(ids);
      std::optional<T> r = guarded([&] { return classify(strokes); });
      if (!r) continue;
      const std::optional<double> score = score_of(*r, strokes);
      if (!score) {
        if (!best) return r;
        continue;
      }
      if (!best || ids.size() > bestSize || (ids.size() == bestSize && *score > bestScore)) {
        best = std::move(r);
        bestSize = ids.size();
        bestScore = *score;
      }
    }
    return best;
  };
  auto glyph_score = [](const Glyph& g, const auto&) { return g.score; };

  if (auto g = run_stage.operator()<Glyph>(
          "clef", [&](const auto& s) { return classify_clef(s, ctx, matcher_, config_); },
          glyph_score)) {
    return add_glyph(*g);
  }
  if (auto g = run_stage.operator()<Glyph>(
          "key", [&](const auto& s) { return classify_accidental_key(s, ctx, matcher_, config_); },
          glyph_score)) {
    return add_glyph(*g);
  }
  if (auto d = run_stage.operator()<DigitOutcome>(
          "beat", [&](const auto& s) { return classify_beat_digits(s, ctx, matcher_, config_); },
          [](const DigitOutcome& o, const auto&) { return o.digit.score; })) {
    const BoundingBox box = add_glyph(d->digit);
    if (d->timeSignature) {
      TimeSignature ts = *d->timeSignature;
      const int newId = scene_.glyphs.back().id;
      if (ts.numeratorGlyph == 0) ts.numeratorGlyph = newId;
      if (ts.denominatorGlyph == 0) ts.denominatorGlyph = newId;
      scene_.timeSignature = ts;
    }
    if (d->diagnostic) scene_.diagnostics.push_back(*d->diagnostic);
    return box;
  }

  // Ink inside an outlined block rest fills it.
  trace("rest", {strokeId});
  for (const Glyph& r : ctx.rests) {
    if (r.kind != GlyphKind::WholeRest && r.kind != GlyphKind::HalfRest) continue;
    if (r.strokeIds.size() != 1) continue;
    const double margin = config_.containmentMargin * ctx.staff.step;
    if (containment(single, r.bbox, margin) >= config_.fillContainment) {
      return extend_glyph(r.id, strokeId, std::nullopt);
    }
  }
  if (auto g = run_stage.operator()<Glyph>(
          "rest", [&](const auto& s) { return classify_rest(s, ctx, matcher_, config_); },
          glyph_score)) {
    return add_glyph(*g);
  }

  trace("head", {strokeId});
  if (auto head = guarded([&] { return classify_head_fill(single, ctx, config_); })) {
    return extend_glyph(*head, strokeId, GlyphKind::NoteHeadFilled);
  }
  if (auto g = run_stage.operator()<Glyph>(
          "head", [&](const auto& s) { return classify_note_head(s, ctx, config_); },
          glyph_score)) {
    return add_glyph(*g);
  }

  trace("bar", {strokeId});
  if (auto b = guarded([&] { return classify_measure_bar(single, ctx, config_); })) {
    if (b->fusedWith) {
      for (Glyph& g : scene_.glyphs) {
        if (g.id != *b->fusedWith) continue;
        g.kind = GlyphKind::BarDouble;
        g.bbox = b->bar.bbox;
        g.strokeIds = b->bar.strokeIds;
        claim({strokeId});
        events.push_back(recognized(g.id, to_string(g.kind), g.strokeIds));
        return g.bbox;
      }
    }
    return add_glyph(b->bar);
  }

  if (auto c = run_stage.operator()<NoteComponent>(
          "component",
          [&](const auto& s) { return classify_component(s, ctx, matcher_, config_); },
          [&](const NoteComponent& c, const std::vector<Stroke>& s) -> std::optional<double> {
            const bool accidental = c.kind == ComponentKind::AccidentalSharp ||
                                    c.kind == ComponentKind::AccidentalFlat;
            if (!accidental) return std::nullopt;
            return matcher_.best(s).score;
          })) {
    c->id = scene_.nextSymbolId++;
    claim(c->strokeIds);
    events.push_back(recognized(c->id, to_string(c->kind), c->strokeIds));
    const BoundingBox box = c->bbox;
    scene_.components.push_back(std::move(*c));
    return box;
  }
  return std::nullopt;
}

void Recognizer::enforce_cap(std::vector<SceneEvent>& events) {
  const auto cap = static_cast<std::size_t>(std::max(0, config_.pendingCap));
  while (scene_.pending.size() > cap) {
    const int id = scene_.pending.front();
    scene_.pending.erase(scene_.pending.begin());
    scene_.unrecognized.push_back(id);
    scene_.diagnostics.push_back("stroke " + std::to_string(id) + " left unrecognized");
    events.push_back({SceneEventKind::Pending, 0, "unrecognized", {id}});
  }
}

void Recognizer::reassemble() {
  Assembly a = assemble_notes_and_measures(scene_.glyphs, scene_.components, scene_.clef(),
                                           scene_.staff);
  scene_.notes = std::move(a.notes);
  scene_.measures = std::move(a.measures);
}

namespace {

struct SymbolKey {
  std::string label;
  std::vector<int> strokes;
  friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
};

std::map<int, SymbolKey> symbols_of(const Scene& scene) {
  std::map<int, SymbolKey> out;
  for (const Glyph& g : scene.glyphs) out[g.id] = {std::string(to_string(g.kind)), g.strokeIds};
  for (const NoteComponent& c : scene.components) {
    out[c.id] = {std::string(to_string(c.kind)), c.strokeIds};
  }
  return out;
}

}  // namespace

std::vector<SceneEvent> Recognizer::undo() {
  if (scene_.rawStrokes.empty()) throw Error(ErrorCode::NothingToUndo, "no stroke to undo");
  const Scene before = scene_;
  std::vector<Stroke> keep = scene_.rawStrokes;
  const int removed = keep.back().id;
  keep.pop_back();
  memo_->forget(removed);

  scene_ = Scene{};
  scene_.canvasWidth = before.canvasWidth;
  scene_.canvasHeight = before.canvasHeight;
  std::vector<SceneEvent> ignored;
  for (Stroke& s : keep) ingest(std::move(s), ignored);

  std::vector<SceneEvent> events;
  const auto oldSymbols = symbols_of(before);
  const auto newSymbols = symbols_of(scene_);
  if (before.staff && !scene_.staff) {
    events.push_back({SceneEventKind::SymbolRevoked, 0, "staff", before.staffStrokeIds});
  }
  for (const auto& [id, sym] : oldSymbols) {
    auto it = newSymbols.find(id);
    if (it == newSymbols.end() || !(it->second == sym)) {
      events.push_back({SceneEventKind::SymbolRevoked, id, sym.label, sym.strokes});
    }
  }
  for (const auto& [id, sym] : newSymbols) {
    auto it = oldSymbols.find(id);
    if (it == oldSymbols.end() || !(it->second == sym)) {
      events.push_back({SceneEventKind::SymbolRecognized, id, sym.label, sym.strokes});
    }
  }
  if (!scene_.pending.empty()) {
    events.push_back({SceneEventKind::Pending, 0, "pending", scene_.pending});
  }
  return events;
}

std::vector<SceneEvent> Recognizer::clear() {
  Scene fresh;
  fresh.canvasWidth = scene_.canvasWidth;
  fresh.canvasHeight = scene_.canvasHeight;
  scene_ = std::move(fresh);
  memo_->clear();
  return {{SceneEventKind::Cleared, 0, "cleared", {}}};
}

Scene recognize_strokes(std::shared_ptr<const TemplateLibrary> library,
                        const std::vector<Stroke>& strokes, const RecognitionConfig& config,
                        double canvasWidth, double canvasHeight) {
  Recognizer r(std::move(library), config, canvasWidth, canvasHeight);
  for (const Stroke& s : strokes) r.add_stroke(s);
  return r.scene();
}

std::string stroke_label(const Scene& scene, int strokeId) {
  auto has = [strokeId](const std::vector<int>& ids) {
    return std::find(ids.begin(), ids.end(), strokeId) != ids.end();
  };
  if (has(scene.staffStrokeIds)) return "staff";
  for (const Glyph& g : scene.glyphs) {
    if (has(g.strokeIds)) return std::string(to_string(g.kind));
  }
  for (const NoteComponent& c : scene.components) {
    if (has(c.strokeIds)) return std::string(to_string(c.kind));
  }
  if (has(scene.unrecognized)) return "unrecognized";
  return "pending";
}

}  // namespace notesketch
