#include "reify/error.hpp"
#include "reify/llm/backend.hpp"

namespace reify::llm {

MockBackend::MockBackend(std::map<std::string, std::string> by_digest) : entries_(std::move(by_digest)) {}

void MockBackend::add(const CompletionRequest& req, std::string text) { add_digest(request_digest(req), std::move(text)); }

void MockBackend::add_digest(const std::string& digest, std::string text) {
  std::lock_guard lock(mu_);
  entries_[digest] = std::move(text);
}

CompletionResponse MockBackend::complete(const CompletionRequest& req) {
  validate_request(req);
  ++calls_;
  const auto digest = request_digest(req);
  std::lock_guard lock(mu_);
  auto it = entries_.find(digest);
  if (it == entries_.end()) throw Error(ErrorCode::kReplayMiss, digest);
  return CompletionResponse{it->second, std::chrono::milliseconds(0), "mock"};
}

}  // namespace reify::llm
