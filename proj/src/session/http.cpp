#include "reify/session/http.hpp"

#include "httplib.h"
#include "reify/error.hpp"

namespace reify::session {

using nlohmann::json;
using nlohmann::ordered_json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSessionNotFound:
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kCohortForbidden:
      return 403;
    case ErrorCode::kBusy:
    case ErrorCode::kSessionFinished:
    case ErrorCode::kPhaseFinished:
    case ErrorCode::kPrecondition:
    case ErrorCode::kDuplicateName:
    case ErrorCode::kNameCollision:
    case ErrorCode::kDanglingReference:
      return 409;
    case ErrorCode::kTimeout:
      return 504;
    case ErrorCode::kAuthMissing:
    case ErrorCode::kRateLimited:
    case ErrorCode::kReplayMiss:
    case ErrorCode::kProvider:
      return 502;
    case ErrorCode::kIo:
    case ErrorCode::kInconsistent:
    case ErrorCode::kCatalog:
    case ErrorCode::kMissingContext:
      return 500;
    default:
      return 400;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, http_status(code), ordered_json{{"error", {{"code", to_string(code)}, {"message", message}}}});
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, ErrorCode::kInvalidArgument, e.what());
    } catch (const std::exception& e) {
      send_error(res, ErrorCode::kIo, e.what());
    }
  };
}

json body_object(const httplib::Request& req) {
  const auto doc = req.body.empty() ? json::object() : json::parse(req.body);
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidArgument, "request body must be a JSON object");
  return doc;
}

}  // namespace

HttpService::HttpService(SessionManager& sessions) : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const auto body = body_object(req);
           if (!body.contains("prompt") || !body["prompt"].is_string()) {
             throw Error(ErrorCode::kEmptyPrompt, "body needs a string 'prompt'");
           }
           auto cohort = parse_cohort(body.value("cohort", "full"));
           if (!cohort) throw Error(ErrorCode::kInvalidArgument, "cohort must be full or controlNoSynthesis");
           const auto id = sessions_.create_session(body["prompt"].get<std::string>(), *cohort);
           send_json(res, 201, encode_state(*sessions_.get_state(id)));
         }));
  s.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, encode_state(*sessions_.get_state(req.matches[1])));
        }));
  s.Post(R"(/sessions/([^/]+)/actions)", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const auto body = body_object(req);
           if (!body.contains("action") || !body["action"].is_string()) {
             throw Error(ErrorCode::kInvalidArgument, "body needs a string 'action'");
           }
           Action a{body["action"].get<std::string>(), body.value("payload", json::object())};
           const auto result = sessions_.apply_action(req.matches[1], a);
           send_json(res, 200, ordered_json{{"state", encode_state(*result.state)}, {"delta", result.delta}});
         }));
  s.Post(R"(/sessions/([^/]+)/finish)", guarded([this](const httplib::Request& req, httplib::Response& res) {
           res.set_content(sessions_.finish_session(req.matches[1]), "application/json");
         }));
  s.Get(R"(/sessions/([^/]+)/export)", guarded([this](const httplib::Request& req, httplib::Response& res) {
          const auto coerce = req.get_param_value("coerce");
          res.set_content(sessions_.export_model(req.matches[1], coerce == "true" || coerce == "1"), "application/json");
        }));
  s.Get(R"(/sessions/([^/]+)/log)", guarded([this](const httplib::Request& req, httplib::Response& res) {
          res.set_content(sessions_.log_text(req.matches[1]), "application/x-ndjson");
        }));
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpService::listen_after_bind() { return server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

void HttpService::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace reify::session
