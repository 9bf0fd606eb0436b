#include "notesketch/service.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdio>
#include <random>

#include "notesketch/json_io.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/symbolic.hpp"

namespace notesketch {

using nlohmann::json;

namespace {

json box_json(const BoundingBox& b) {
  return {{"minX", b.minX}, {"minY", b.minY}, {"maxX", b.maxX}, {"maxY", b.maxY}};
}

json symbolic_json(const SymbolicScene& s) {
  json out;
  out["clef"] = s.clef ? json(to_string(*s.clef)) : json(nullptr);
  json key = json::array();
  for (const KeyAccidental& k : s.key) {
    key.push_back({{"accidental", to_string(k.accidental)}, {"position", k.position}});
  }
  out["key"] = key;
  out["time"] = s.time ? json{{"numerator", s.time->numerator}, {"denominator", s.time->denominator}}
                       : json(nullptr);
  out["digits"] = s.digits;
  json elements = json::array();
  for (const Element& e : s.elements) {
    json j = {{"x", e.x}};
    switch (e.kind) {
      case ElementKind::Note:
        j["kind"] = "note";
        j["position"] = e.position;
        j["pitch"] = e.pitch.empty() ? json(nullptr) : json(e.pitch);
        j["accidental"] = e.accidental ? json(to_string(*e.accidental)) : json(nullptr);
        j["durationBeats"] = e.durationBeats ? json(*e.durationBeats) : json(nullptr);
        break;
      case ElementKind::Rest:
        j["kind"] = "rest";
        j["rest"] = to_string(e.rest);
        break;
      case ElementKind::Bar:
        j["kind"] = "bar";
        j["bar"] = to_string(e.bar);
        break;
    }
    elements.push_back(std::move(j));
  }
  out["elements"] = elements;
  return out;
}

std::string feedback_sentence(bool correct) {
  return correct ? "Correct! Your answer matches the solution."
                 : "Not quite. Check the criteria below and try again.";
}

}  // namespace

json scene_to_json(const Scene& scene) {
  json out;
  if (scene.staff) {
    const StaffModel& st = *scene.staff;
    out["staff"] = {{"lines", st.lineYs},      {"step", st.step},
                    {"left", st.left},         {"right", st.right},
                    {"strokes", scene.staffStrokeIds}};
  } else {
    out["staff"] = nullptr;
  }
  json glyphs = json::array();
  for (const Glyph& g : scene.glyphs) {
    json j = {{"id", g.id}, {"kind", to_string(g.kind)}, {"bbox", box_json(g.bbox)},
              {"strokes", g.strokeIds}};
    if (g.position) j["position"] = *g.position;
    if (g.digit >= 0) j["digit"] = g.digit;
    glyphs.push_back(std::move(j));
  }
  out["glyphs"] = glyphs;
  json components = json::array();
  for (const NoteComponent& c : scene.components) {
    json j = {{"id", c.id}, {"kind", to_string(c.kind)}, {"anchor", c.anchor},
              {"bbox", box_json(c.bbox)}, {"strokes", c.strokeIds}};
    if (c.secondAnchor) j["secondAnchor"] = *c.secondAnchor;
    components.push_back(std::move(j));
  }
  out["components"] = components;
  out["pending"] = scene.pending;
  out["unrecognized"] = scene.unrecognized;
  out["diagnostics"] = scene.diagnostics;
  const SymbolicScene symbolic = to_symbolic(scene);
  out["symbolic"] = symbolic_json(symbolic);
  out["tokens"] = scene_tokens(symbolic);
  return out;
}

json events_to_json(const std::vector<SceneEvent>& events) {
  json out = json::array();
  for (const SceneEvent& e : events) {
    out.push_back({{"kind", to_string(e.kind)},
                   {"symbolId", e.symbolId},
                   {"label", e.label},
                   {"strokes", e.strokeIds}});
  }
  return out;
}

json feedback_to_json(const Feedback& feedback) {
  json results = json::array();
  for (const CriterionResult& r : feedback.results) {
    results.push_back(
        {{"criterion", to_string(r.criterion)}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return {{"correct", feedback.correct},
          {"sentence", feedback_sentence(feedback.correct)},
          {"results", results},
          {"progress",
           {{"correct", feedback.progress.correct},
            {"incorrect", feedback.progress.incorrect},
            {"inProgress", feedback.progress.inProgress}}}};
}

json report_to_json(const QuizReport& report) {
  json rows = json::array();
  for (const ReportEntry& e : report.perQuestion) {
    rows.push_back({{"questionNumber", e.questionNumber},
                    {"text", e.text},
                    {"correct", e.correct},
                    {"solutionImage", e.solutionImageRef.empty() ? json(nullptr)
                                                                 : json(e.solutionImageRef)}});
  }
  return {{"scorePercent", report.scorePercent}, {"perQuestion", rows}};
}

json error_to_json(const Error& error) {
  return {{"error", {{"code", to_string(error.code())}, {"message", error.what()}}}};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownLesson:
    case ErrorCode::UnknownQuestion:
      return 404;
    case ErrorCode::IllegalNavigation:
    case ErrorCode::QuizLocked:
    case ErrorCode::QuizIncomplete:
    case ErrorCode::NotApplicable:
    case ErrorCode::NothingToUndo:
    case ErrorCode::DuplicateStroke:
      return 409;
    case ErrorCode::IoError:
    case ErrorCode::EmptyLibrary:
    case ErrorCode::MissingAnswerData:
      return 500;
    default:
      return 400;
  }
}

struct SessionService::Session {
  std::string id;
  std::string lessonId;
  const Lesson* lesson = nullptr;
  Mode mode = Mode::Practice;
  int current = 1;
  std::map<int, std::unique_ptr<Recognizer>> drawings;
  ProgressTracker progress;
  Clock::time_point createdAt;
  Clock::time_point lastActive;
  std::uint64_t nextTicket = 0;   // guarded by the service mutex

  std::mutex turnMutex;
  std::condition_variable turn;
  std::uint64_t serving = 0;

  Session(Mode m, std::vector<int> numbers) : mode(m), progress(m, std::move(numbers)) {}
};

namespace {

std::string image_url(const std::string& lessonId, int number) {
  return std::string(kApiPrefix) + "/lessons/" + lessonId + "/questions/" + std::to_string(number) +
         "/image";
}

std::vector<int> numbers_of(const Lesson& lesson) {
  std::vector<int> out;
  for (const Question& q : lesson.questions) out.push_back(q.number);
  return out;
}

}  // namespace

SessionService::SessionService(std::vector<CatalogEntry> catalog,
                               std::shared_ptr<const TemplateLibrary> library,
                               RecognitionConfig config, ServiceOptions options)
    : catalog_(std::move(catalog)), library_(std::move(library)), config_(config),
      options_(std::move(options)) {
  idSalt_ = std::random_device{}();
  idSalt_ = (idSalt_ << 32) ^ std::random_device{}();
}

SessionService::~SessionService() = default;

json SessionService::list_lessons() const {
  json lessons = json::array();
  for (const CatalogEntry& e : catalog_) {
    json modes = json::array();
    if (e.lesson.practice) modes.push_back("practice");
    if (e.lesson.quiz) modes.push_back("quiz");
    lessons.push_back({{"id", e.id},
                       {"title", e.lesson.title},
                       {"questionCount", e.lesson.questions.size()},
                       {"modes", modes}});
  }
  return {{"lessons", lessons}};
}

std::string SessionService::new_id() {
  // splitmix64 over a salted counter
  std::uint64_t z = idSalt_ + 0x9E3779B97F4A7C15ull * ++idCounter_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(z));
  return buf;
}

std::size_t SessionService::expire_locked(Clock::time_point now) {
  std::size_t removed = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->lastActive > options_.idleTimeout) {
      it = sessions_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t SessionService::expire_idle() {
  std::lock_guard lk(mutex_);
  return expire_locked(options_.now());
}

std::size_t SessionService::session_count() const {
  std::lock_guard lk(mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionService::Session> SessionService::acquire(const std::string& id,
                                                                 std::uint64_t& ticket) {
  std::lock_guard lk(mutex_);
  const Clock::time_point now = options_.now();
  expire_locked(now);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session " + id);
  it->second->lastActive = now;
  ticket = it->second->nextTicket++;
  return it->second;
}

template <typename Fn>
json SessionService::with_session(const std::string& id, Fn&& fn) {
  std::uint64_t ticket = 0;
  std::shared_ptr<Session> s = acquire(id, ticket);
  {
    std::unique_lock lk(s->turnMutex);
    s->turn.wait(lk, [&] { return s->serving == ticket; });
  }
  struct Release {
    Session& s;
    ~Release() {
      {
        std::lock_guard lk(s.turnMutex);
        ++s.serving;
      }
      s.turn.notify_all();
    }
  } release{*s};
  return fn(*s);
}

namespace {

using Session = SessionService::Session;

json question_payload(const Session& s) {
  const Question& q = s.lesson->question(s.current);
  const int total = static_cast<int>(s.lesson->questions.size());
  json out = {{"number", q.number},
              {"total", total},
              {"text", q.text},
              {"status", to_string(s.progress.status(q.number))},
              {"canGoBack", s.mode == Mode::Practice && q.number > 1},
              {"canGoForward", q.number < total}};
  if (s.mode == Mode::Practice) {
    if (q.hint) out["hint"] = *q.hint;
    if (q.imageRef) out["image"] = image_url(s.lessonId, q.number);
  }
  return out;
}

json progress_json(const Progress& p) {
  return {{"correct", p.correct}, {"incorrect", p.incorrect}, {"inProgress", p.inProgress}};
}

Recognizer& drawing(Session& s, const std::shared_ptr<const TemplateLibrary>& lib,
                    const RecognitionConfig& config) {
  auto& slot = s.drawings[s.current];
  if (!slot) slot = std::make_unique<Recognizer>(lib, config);
  return *slot;
}

json scene_update(const std::vector<SceneEvent>& events, const Recognizer& r) {
  return {{"events", events_to_json(events)}, {"scene", scene_to_json(r.scene())}};
}

std::string media_type(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  return "application/octet-stream";
}

}  // namespace

const CatalogEntry& SessionService::entry(const std::string& lessonId) const {
  for (const CatalogEntry& e : catalog_) {
    if (e.id == lessonId) return e;
  }
  throw Error(ErrorCode::UnknownLesson, "no lesson " + lessonId);
}

std::pair<std::string, std::string> SessionService::question_image(const std::string& lessonId,
                                                                   int number) const {
  const Lesson& lesson = entry(lessonId).lesson;
  const Question& q = lesson.question(number);
  if (!q.imageRef) {
    throw Error(ErrorCode::MissingImage, "question " + std::to_string(number) + " has no image");
  }
  const std::filesystem::path path = lesson.baseDir / *q.imageRef;
  return {read_text_file(path), media_type(path)};
}

json SessionService::create_session(const std::string& lessonId, Mode mode) {
  const CatalogEntry& e = entry(lessonId);
  if ((mode == Mode::Practice && !e.lesson.practice) || (mode == Mode::Quiz && !e.lesson.quiz)) {
    throw Error(ErrorCode::NotApplicable,
                "lesson " + lessonId + " has no " + std::string(to_string(mode)) + " mode");
  }
  auto s = std::make_shared<Session>(mode, numbers_of(e.lesson));
  s->lessonId = e.id;
  s->lesson = &e.lesson;
  s->current = e.lesson.questions.front().number;
  std::lock_guard lk(mutex_);
  const Clock::time_point now = options_.now();
  expire_locked(now);
  s->createdAt = now;
  s->lastActive = now;
  do {
    s->id = new_id();
  } while (sessions_.count(s->id) != 0);
  sessions_[s->id] = s;
  return {{"session", s->id},
          {"lesson", s->lessonId},
          {"title", e.lesson.title},
          {"mode", to_string(mode)},
          {"question", question_payload(*s)},
          {"progress", progress_json(s->progress.counts())}};
}

json SessionService::get_session(const std::string& id) {
  return with_session(id, [&](Session& s) {
    const Recognizer& r = drawing(s, library_, config_);
    return json{{"session", s.id},
                {"lesson", s.lessonId},
                {"title", s.lesson->title},
                {"mode", to_string(s.mode)},
                {"question", question_payload(s)},
                {"progress", progress_json(s.progress.counts())},
                {"scene", scene_to_json(r.scene())}};
  });
}

json SessionService::submit_stroke(const std::string& id, const json& stroke) {
  return with_session(id, [&](Session& s) {
    Recognizer& r = drawing(s, library_, config_);
    int nextId = 1;
    for (const Stroke& existing : r.scene().rawStrokes) nextId = std::max(nextId, existing.id + 1);
    Stroke parsed = stroke_from_json(stroke, "stroke", nextId);
    const auto events = r.add_stroke(std::move(parsed));
    return scene_update(events, r);
  });
}

json SessionService::undo(const std::string& id) {
  return with_session(id, [&](Session& s) {
    Recognizer& r = drawing(s, library_, config_);
    const auto events = r.undo();
    return scene_update(events, r);
  });
}

json SessionService::clear(const std::string& id) {
  return with_session(id, [&](Session& s) {
    Recognizer& r = drawing(s, library_, config_);
    const auto events = r.clear();
    return scene_update(events, r);
  });
}

json SessionService::check(const std::string& id) {
  return with_session(id, [&](Session& s) {
    const Question& q = s.lesson->question(s.current);
    const Recognizer& r = drawing(s, library_, config_);
    const Feedback f = grade(to_symbolic(r.scene()), q.answer, q.flags, q.number, s.progress);
    json out = {{"question", q.number}, {"feedback", feedback_to_json(f)}};
    if (s.mode == Mode::Practice && q.imageRef) out["solutionImage"] = image_url(s.lessonId, q.number);
    if (s.mode == Mode::Quiz && s.progress.all_checked()) {
      std::vector<QuestionInfo> infos;
      for (const Question& each : s.lesson->questions) {
        infos.push_back({each.number, each.text,
                         each.imageRef ? image_url(s.lessonId, each.number) : std::string()});
      }
      out["report"] = report_to_json(build_report(s.progress, infos));
    }
    return out;
  });
}

json SessionService::navigate(const std::string& id, const json& request) {
  return with_session(id, [&](Session& s) {
    if (!request.is_object()) throw Error(ErrorCode::MalformedDocument, "expected an object");
    const int total = static_cast<int>(s.lesson->questions.size());
    int target = s.current;
    if (auto it = request.find("to"); it != request.end()) {
      if (!it->is_number_integer()) throw Error(ErrorCode::MalformedDocument, "to: expected an integer");
      target = it->get<int>();
    } else if (auto d = request.find("direction"); d != request.end() && d->is_string()) {
      if (*d == "next") target = s.current + 1;
      else if (*d == "previous") target = s.current - 1;
      else throw Error(ErrorCode::MalformedDocument, "direction: expected \"next\" or \"previous\"");
    } else {
      throw Error(ErrorCode::MalformedDocument, "expected \"to\" or \"direction\"");
    }
    if (s.mode == Mode::Quiz && target < s.current) {
      throw Error(ErrorCode::IllegalNavigation, "quiz mode does not allow going back");
    }
    if (target < 1 || target > total) {
      throw Error(ErrorCode::OutOfRange,
                  "question " + std::to_string(target) + " outside 1.." + std::to_string(total));
    }
    s.current = target;
    const Recognizer& r = drawing(s, library_, config_);
    return json{{"question", question_payload(s)},
                {"progress", progress_json(s.progress.counts())},
                {"scene", scene_to_json(r.scene())}};
  });
}

void SessionService::end_session(const std::string& id) {
  std::lock_guard lk(mutex_);
  if (sessions_.erase(id) == 0) throw Error(ErrorCode::UnknownSession, "no session " + id);
}

}  // namespace notesketch
