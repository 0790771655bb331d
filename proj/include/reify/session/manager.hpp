#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "reify/llm/backend.hpp"
#include "reify/model/object_model.hpp"
#include "reify/orchestrator/orchestrator.hpp"
#include "reify/session/events.hpp"
#include "reify/session/store.hpp"

namespace reify::session {

struct SessionOptions {
  // no directory keeps sessions in memory only
  std::optional<std::filesystem::path> data_dir;
  std::size_t snapshot_every = 16;
  bool sync = true;
  // wall clock in Unix milliseconds
  std::function<std::int64_t()> now_ms;
  FaultHook fault_hook;
  orchestrator::OrchestratorConfig orchestrator;
};

// Committed state of one session; immutable once published.
struct SessionState {
  std::string id;
  std::string prompt;
  Cohort cohort = Cohort::kFull;
  std::int64_t created_at = 0;
  std::optional<std::int64_t> finished_at;
  model::ObjectModel model;
  std::size_t event_count = 0;
  std::int64_t last_t = 0;
  bool begun = false;
  // diagnostics of the last synthesis action, as in its event
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::array();
};

nlohmann::ordered_json encode_state(const SessionState& state);

struct ActionResult {
  std::shared_ptr<const SessionState> state;
  nlohmann::ordered_json delta;
};

class SessionManager {
 public:
  // Recovers every session found under options.data_dir.
  SessionManager(std::shared_ptr<llm::CompletionBackend> backend, SessionOptions options = {});
  ~SessionManager();

  std::string create_session(const std::string& prompt, Cohort cohort = Cohort::kFull);
  // Busy when another action on the same session is in flight.
  ActionResult apply_action(const std::string& id, const Action& action);
  // Idempotent; returns the lossless final model document.
  std::string finish_session(const std::string& id);
  // Last committed state; never waits for an in-flight action.
  std::shared_ptr<const SessionState> get_state(const std::string& id) const;
  std::vector<SessionEvent> log(const std::string& id) const;
  std::string log_text(const std::string& id) const;
  // Model document; dangling references fail unless coerced to string.
  std::string export_model(const std::string& id, bool coerce_dangling = false) const;
  std::vector<std::string> session_ids() const;

 private:
  struct Slot;

  std::shared_ptr<Slot> slot(const std::string& id) const;
  std::int64_t now() const;
  std::string new_id();
  void commit(Slot& slot, const SessionState& before, SessionEvent event, model::ObjectModel after,
              const std::vector<prompt::PromptExchange>& exchanges, bool force_snapshot);

  std::shared_ptr<llm::CompletionBackend> backend_;
  SessionOptions options_;
  orchestrator::Orchestrator orch_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex id_mu_;
  std::uint64_t id_state_;
};

}  // namespace reify::session
