#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <mutex>
#include <string>

#include "reify/llm/request.hpp"

namespace reify::llm {

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual CompletionResponse complete(const CompletionRequest& req) = 0;
};

// Canned completions keyed by request digest.
class MockBackend : public CompletionBackend {
 public:
  MockBackend() = default;
  explicit MockBackend(std::map<std::string, std::string> by_digest);

  void add(const CompletionRequest& req, std::string text);
  void add_digest(const std::string& digest, std::string text);

  // Unknown digests throw Error(kReplayMiss).
  CompletionResponse complete(const CompletionRequest& req) override;
  std::size_t calls() const { return calls_.load(); }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::string> entries_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace reify::llm
