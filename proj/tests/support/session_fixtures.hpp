#pragma once

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>

#include "prompt/figures.hpp"
#include "reify/llm/replay.hpp"
#include "reify/session/manager.hpp"

namespace reify::testing {

// The committed store; replay mode never reaches a live provider.
inline std::shared_ptr<llm::ReplayStore> fixture_store() {
  return llm::ReplayStore::open(fixture_path("replay"), llm::ReplayMode::kReplay);
}

// Advances one second per reading.
inline std::function<std::int64_t()> stepping_clock(std::int64_t start = 1'700'000'000'000) {
  auto t = std::make_shared<std::atomic<std::int64_t>>(start);
  return [t] { return t->fetch_add(1000); };
}

// Parks every completion until released.
class GateBackend : public llm::CompletionBackend {
 public:
  explicit GateBackend(std::shared_ptr<llm::CompletionBackend> inner) : inner_(std::move(inner)) {}

  llm::CompletionResponse complete(const llm::CompletionRequest& req) override {
    {
      std::unique_lock lock(mu_);
      ++waiting_;
      cv_.notify_all();
      cv_.wait(lock, [this] { return open_; });
      --waiting_;
    }
    return inner_->complete(req);
  }

  void wait_for_waiters(int n) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return waiting_ >= n; });
  }
  void open() {
    std::lock_guard lock(mu_);
    open_ = true;
    cv_.notify_all();
  }

 private:
  std::shared_ptr<llm::CompletionBackend> inner_;
  std::mutex mu_;
  std::condition_variable cv_;
  int waiting_ = 0;
  bool open_ = false;
};

}  // namespace reify::testing
