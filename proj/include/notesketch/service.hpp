#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "notesketch/config.hpp"
#include "notesketch/error.hpp"
#include "notesketch/grading.hpp"
#include "notesketch/lesson.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/template_matcher.hpp"

namespace httplib {
class Server;
}

namespace notesketch {

inline constexpr const char* kApiPrefix = "/api/v1";

using Clock = std::chrono::steady_clock;

struct ServiceOptions {
  std::chrono::minutes idleTimeout{60};
  std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

// Response documents.
nlohmann::json scene_to_json(const Scene& scene);
nlohmann::json events_to_json(const std::vector<SceneEvent>& events);
nlohmann::json feedback_to_json(const Feedback& feedback);
nlohmann::json report_to_json(const QuizReport& report);
nlohmann::json error_to_json(const Error& error);
// HTTP status for an engine error: 404 for unknown ids, 409 for requests the
// session state forbids, 400 for malformed input.
int http_status(ErrorCode code);

// Practice and quiz sittings over a lesson catalog. Operations on one
// session run one at a time in arrival order; distinct sessions run in
// parallel. Sessions idle longer than the timeout are dropped.
class SessionService {
 public:
  SessionService(std::vector<CatalogEntry> catalog, std::shared_ptr<const TemplateLibrary> library,
                 RecognitionConfig config = {}, ServiceOptions options = {});
  ~SessionService();

  nlohmann::json list_lessons() const;
  nlohmann::json create_session(const std::string& lessonId, Mode mode);
  nlohmann::json get_session(const std::string& id);
  nlohmann::json submit_stroke(const std::string& id, const nlohmann::json& stroke);
  nlohmann::json undo(const std::string& id);
  nlohmann::json clear(const std::string& id);
  nlohmann::json check(const std::string& id);
  // {"to": n} or {"direction": "next" | "previous"}.
  nlohmann::json navigate(const std::string& id, const nlohmann::json& request);
  void end_session(const std::string& id);

  std::size_t session_count() const;
  std::size_t expire_idle();

  // Image bytes and media type for a question's solution image.
  std::pair<std::string, std::string> question_image(const std::string& lessonId, int number) const;

  struct Session;   // defined with the implementation

 private:
  const CatalogEntry& entry(const std::string& lessonId) const;

  std::shared_ptr<Session> acquire(const std::string& id, std::uint64_t& ticket);
  template <typename Fn>
  nlohmann::json with_session(const std::string& id, Fn&& fn);
  std::size_t expire_locked(Clock::time_point now);
  std::string new_id();

  std::vector<CatalogEntry> catalog_;
  std::shared_ptr<const TemplateLibrary> library_;
  RecognitionConfig config_;
  ServiceOptions options_;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t idCounter_ = 0;
  std::uint64_t idSalt_ = 0;
};

// Registers the endpoints under kApiPrefix:
//   GET    /lessons
//   POST   /sessions                      {"lesson", "mode"}
//   GET    /sessions/{id}
//   DELETE /sessions/{id}
//   POST   /sessions/{id}/strokes         {"points": [...]}
//   POST   /sessions/{id}/undo
//   POST   /sessions/{id}/clear
//   POST   /sessions/{id}/check
//   POST   /sessions/{id}/navigate        {"to"} or {"direction"}
void mount_routes(httplib::Server& server, SessionService& service);

}  // namespace notesketch
