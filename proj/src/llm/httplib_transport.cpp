#include "httplib.h"
#include "reify/llm/live.hpp"

namespace reify::llm {

HttpResult HttplibTransport::post(const std::string& url, const std::map<std::string, std::string>& headers,
                                  const std::string& body, std::chrono::milliseconds timeout) {
  HttpResult out;
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  const std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) {
    out.transport_error = true;
    return out;
  }
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = client.Post(path, h, body, "application/json");
  if (!res) {
    const auto err = res.error();
    out.timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
    out.transport_error = !out.timed_out;
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  return out;
}

}  // namespace reify::llm
