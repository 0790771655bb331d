#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reify/model/object_model.hpp"
#include "reify/session/events.hpp"

namespace reify::session {

// Called at named points of a write; tests use it to stall or kill there.
using FaultHook = std::function<void(std::string_view point)>;

// Files of one session directory:
//   events.jsonl    append-only log, one event per line; the commit point
//   exchanges.jsonl prompt exchanges tagged with the seq of their event
//   snapshot.json   {seq, model} at some committed seq, replaced atomically
//   model.json      final model document, written by finish
class SessionStore {
 public:
  SessionStore(std::filesystem::path dir, bool sync, FaultHook hook = nullptr);
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

  void append_event(const SessionEvent& event);
  void append_exchanges(std::uint64_t seq, const std::vector<prompt::PromptExchange>& exchanges);
  void write_snapshot(std::uint64_t seq, const model::ObjectModel& model);
  void write_final_model(const std::string& document);

  struct Recovered {
    std::vector<SessionEvent> events;
    model::ObjectModel model;
    // bytes dropped from a torn last line
    std::size_t truncated_bytes = 0;
    std::optional<std::uint64_t> snapshot_seq;
  };

  // Reads the committed prefix of the log, drops a torn tail, and rebuilds
  // the model from the newest usable snapshot plus the events after it.
  // Returns nothing when no createSession event was ever committed.
  static std::optional<Recovered> recover(const std::filesystem::path& dir);

 private:
  void write_all(int fd, std::string_view bytes, bool split);

  std::filesystem::path dir_;
  bool sync_;
  FaultHook hook_;
  int log_fd_ = -1;
  int exchange_fd_ = -1;
};

// Writes `bytes` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes, bool sync,
                       const FaultHook& hook = nullptr);

}  // namespace reify::session
