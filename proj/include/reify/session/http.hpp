#pragma once

#include <memory>
#include <string>

#include "reify/error.hpp"
#include "reify/session/manager.hpp"

namespace httplib {
class Server;
}

namespace reify::session {

// HTTP+JSON front end:
//   POST /sessions                 {prompt, cohort?} -> 201 state
//   GET  /sessions/{id}            state
//   POST /sessions/{id}/actions    {action, payload} -> {state, delta}
//   POST /sessions/{id}/finish     final model document
//   GET  /sessions/{id}/export     model document; ?coerce=true retypes dangling references
//   GET  /sessions/{id}/log        JSON Lines, one event per line
// Errors are {"error": {code, message}} with a matching status.
class HttpService {
 public:
  explicit HttpService(SessionManager& sessions);
  ~HttpService();

  // Returns the bound port; 0 binds any free port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  SessionManager& sessions_;
  std::unique_ptr<httplib::Server> server_;
};

int http_status(ErrorCode code);

}  // namespace reify::session
