#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "reify/llm/backend.hpp"

namespace reify::llm {

enum class ReplayMode { kRecord, kReplay, kPassthrough };

std::string_view to_string(ReplayMode mode);
std::optional<ReplayMode> parse_replay_mode(std::string_view text);

// Record: serve from the store, else ask upstream and keep the answer.
// Replay: serve from the store; a miss is Error(kReplayMiss), never a live call.
// Passthrough: always ask upstream.
//
// On disk a store is a directory with manifest.json and one <digest>.txt
// per entry. Record mode writes through after every new entry.
class ReplayStore : public CompletionBackend {
 public:
  ReplayStore(ReplayMode mode, std::shared_ptr<CompletionBackend> upstream = nullptr,
              std::optional<std::filesystem::path> dir = std::nullopt);

  // Loads an existing directory; a missing directory is an empty store.
  static std::shared_ptr<ReplayStore> open(const std::filesystem::path& dir, ReplayMode mode,
                                           std::shared_ptr<CompletionBackend> upstream = nullptr);

  CompletionResponse complete(const CompletionRequest& req) override;

  ReplayMode mode() const { return mode_; }
  std::size_t size() const;
  bool contains(const std::string& digest) const;
  std::map<std::string, std::string> entries() const;
  void insert(const CompletionRequest& req, std::string text);
  void save() const;
  std::size_t upstream_calls() const;

 private:
  void save_locked() const;

  ReplayMode mode_;
  std::shared_ptr<CompletionBackend> upstream_;
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> entries_;
  std::map<std::string, std::string> labels_;
  std::size_t upstream_calls_ = 0;
};

}  // namespace reify::llm
