#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "reify/session/http.hpp"
#include "support/scripted.hpp"
#include "support/session_fixtures.hpp"

using namespace reify::session;
using nlohmann::json;

namespace {

struct Running {
  SessionManager sessions;
  HttpService http;
  int port;
  std::thread thread;

  Running() : sessions(reify::testing::fixture_store(), [] {
                SessionOptions o;
                o.now_ms = reify::testing::stepping_clock();
                return o;
              }()),
              http(sessions), port(http.bind("127.0.0.1", 0)) {
    REQUIRE(port > 0);
    thread = std::thread([this] { http.listen_after_bind(); });
    http.wait_until_ready();
  }
  ~Running() {
    http.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

json post(httplib::Client& c, const std::string& path, const json& body, int expect) {
  auto res = c.Post(path, body.dump(), "application/json");
  REQUIRE(res);
  INFO(res->body);
  CHECK(res->status == expect);
  return json::parse(res->body);
}

json get(httplib::Client& c, const std::string& path, int expect) {
  auto res = c.Get(path);
  REQUIRE(res);
  INFO(res->body);
  CHECK(res->status == expect);
  return json::parse(res->body);
}

}  // namespace

TEST_CASE("http workflow") {
  Running srv;
  auto c = srv.client();
  const auto prompt = reify::testing::ScriptedBackend::script_prompt("restaurant");
  const auto created = post(c, "/sessions", {{"prompt", prompt}}, 201);
  const std::string id = created["id"];
  CHECK(created["componentCount"] == 0);
  CHECK(created["phase"] == "draftingNames");
  CHECK(created["cohort"] == "full");

  auto r = post(c, "/sessions/" + id + "/actions", {{"action", "begin"}}, 200);
  CHECK(r["delta"]["additions"].size() == 6);
  CHECK(r["state"]["componentCount"] == 6);
  r = post(c, "/sessions/" + id + "/actions", {{"action", "generateFieldsAndMethods"}, {"payload", json::object()}}, 200);
  CHECK(r["state"]["phase"] == "fullModel");
  CHECK(r["delta"]["exchanges"].size() > 0);
  r = post(c, "/sessions/" + id + "/actions", {{"action", "deleteComponent"}, {"payload", {{"object", "reservation"}}}},
           200);

  // customer.reservation now dangles
  CHECK(get(c, "/sessions/" + id + "/export", 409)["error"]["code"] == "DanglingReference");
  const auto coerced = get(c, "/sessions/" + id + "/export?coerce=true", 200);
  CHECK(coerced["objects"][0]["fields"].size() > 0);

  const auto state = get(c, "/sessions/" + id, 200);
  CHECK(state["eventCount"] == 4);

  auto fin = c.Post("/sessions/" + id + "/finish");
  REQUIRE(fin);
  CHECK(fin->status == 200);
  CHECK(json::parse(fin->body)["phase"] == "finished");
  auto again = c.Post("/sessions/" + id + "/finish");
  CHECK(again->body == fin->body);

  auto log = c.Get("/sessions/" + id + "/log");
  REQUIRE(log);
  CHECK(log->status == 200);
  CHECK(log->get_header_value("Content-Type") == "application/x-ndjson");
  const auto events = decode_log(log->body);
  REQUIRE(events.size() == 5);
  CHECK(events[1].action == "begin");
  CHECK(events[4].action == "finish");
  CHECK(post(c, "/sessions/" + id + "/actions", {{"action", "addObject"}, {"payload", {{"name", "x"}}}}, 409)["error"]["code"] ==
        "Finished");
}

TEST_CASE("http errors") {
  Running srv;
  auto c = srv.client();
  CHECK(post(c, "/sessions", {{"prompt", ""}}, 400)["error"]["code"] == "EmptyPrompt");
  CHECK(post(c, "/sessions", json::object(), 400)["error"]["code"] == "EmptyPrompt");
  CHECK(post(c, "/sessions", {{"prompt", "x"}, {"cohort", "other"}}, 400)["error"]["code"] == "InvalidArgument");
  CHECK(get(c, "/sessions/nope", 404)["error"]["code"] == "SessionNotFound");
  CHECK(get(c, "/sessions/nope/log", 404)["error"]["code"] == "SessionNotFound");

  const std::string control = post(c, "/sessions", {{"prompt", "a shop"}, {"cohort", "controlNoSynthesis"}}, 201)["id"];
  post(c, "/sessions/" + control + "/actions", {{"action", "begin"}}, 200);
  CHECK(post(c, "/sessions/" + control + "/actions", {{"action", "generateFieldsAndMethods"}}, 403)["error"]["code"] ==
        "CohortForbidden");
  CHECK(post(c, "/sessions/" + control + "/actions", {{"action", "dance"}}, 400)["error"]["code"] == "UnknownAction");
  CHECK(post(c, "/sessions/" + control + "/actions", {{"payload", 1}}, 400)["error"]["code"] == "InvalidArgument");

  auto res = c.Post("/sessions", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);

  // no transcript for this prompt
  const std::string other = post(c, "/sessions", {{"prompt", "a shop"}}, 201)["id"];
  CHECK(post(c, "/sessions/" + other + "/actions", {{"action", "begin"}}, 502)["error"]["code"] == "ReplayMiss");
}
