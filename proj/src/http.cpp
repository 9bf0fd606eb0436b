#include "httplib.h"
#include "notesketch/service.hpp"

namespace notesketch {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json request_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("invalid JSON body: ") + e.what());
  }
}

template <typename Fn>
httplib::Server::Handler handler(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), error_to_json(e));
    } catch (const std::exception& e) {
      send_json(res, 500, error_to_json(Error(ErrorCode::IoError, e.what())));
    }
  };
}

}  // namespace

void mount_routes(httplib::Server& server, SessionService& service) {
  const std::string api = kApiPrefix;
  const std::string session = api + R"(/sessions/([0-9a-f]+))";

  server.Get(api + "/lessons", handler([&service](const auto&, auto& res) {
               send_json(res, 200, service.list_lessons());
             }));

  server.Get(api + R"(/lessons/([A-Za-z0-9_\-]+)/questions/(\d+)/image)",
             handler([&service](const httplib::Request& req, httplib::Response& res) {
               auto [body, type] = service.question_image(req.matches[1], std::stoi(req.matches[2]));
               res.status = 200;
               res.set_content(body, type);
             }));

  server.Post(api + "/sessions",
              handler([&service](const httplib::Request& req, httplib::Response& res) {
                const json body = request_body(req);
                if (!body.is_object() || !body.contains("lesson") || !body["lesson"].is_string()) {
                  throw Error(ErrorCode::MalformedDocument, "lesson: expected a string");
                }
                const std::string modeText = body.value("mode", std::string("practice"));
                const auto mode = parse_mode(modeText);
                if (!mode) {
                  throw Error(ErrorCode::MalformedDocument,
                              "mode: expected \"practice\" or \"quiz\"");
                }
                send_json(res, 200, service.create_session(body["lesson"], *mode));
              }));

  server.Get(session, handler([&service](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, service.get_session(req.matches[1]));
             }));

  server.Delete(session, handler([&service](const httplib::Request& req, httplib::Response& res) {
                  service.end_session(req.matches[1]);
                  send_json(res, 200, json{{"ended", req.matches[1].str()}});
                }));

  server.Post(session + "/strokes",
              handler([&service](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, service.submit_stroke(req.matches[1], request_body(req)));
              }));

  server.Post(session + "/undo",
              handler([&service](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, service.undo(req.matches[1]));
              }));

  server.Post(session + "/clear",
              handler([&service](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, service.clear(req.matches[1]));
              }));

  server.Post(session + "/check",
              handler([&service](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, service.check(req.matches[1]));
              }));

  server.Post(session + "/navigate",
              handler([&service](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, service.navigate(req.matches[1], request_body(req)));
              }));
}

}  // namespace notesketch
