#include "reify/session/manager.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>

#include "reify/error.hpp"
#include "reify/model/codec.hpp"
#include "reify/model/ops.hpp"
#include "reify/prompt/text.hpp"

namespace reify::session {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct SessionManager::Slot {
  std::mutex action_mu;
  // published with std::atomic_store so readers never take action_mu
  std::shared_ptr<const SessionState> state;
  mutable std::mutex log_mu;
  std::vector<SessionEvent> events;
  std::unique_ptr<SessionStore> store;
  std::size_t since_snapshot = 0;

  std::shared_ptr<const SessionState> load() const { return std::atomic_load(&state); }
  void publish(std::shared_ptr<const SessionState> s) { std::atomic_store(&state, std::move(s)); }
};

ordered_json encode_state(const SessionState& s) {
  ordered_json out;
  out["id"] = s.id;
  out["prompt"] = s.prompt;
  out["cohort"] = to_string(s.cohort);
  out["phase"] = to_string(s.model.phase);
  out["createdAt"] = s.created_at;
  out["finishedAt"] = s.finished_at ? ordered_json(*s.finished_at) : ordered_json(nullptr);
  out["componentCount"] = model::component_count(s.model);
  out["eventCount"] = s.event_count;
  out["diagnostics"] = s.diagnostics;
  out["model"] = model::encode_model(s.model);
  return out;
}

namespace {

SessionState state_from_log(const std::string& id, const std::vector<SessionEvent>& events, model::ObjectModel m) {
  SessionState s;
  s.id = id;
  const auto& create = events.front().payload;
  s.prompt = create.value("prompt", "");
  s.cohort = parse_cohort(create.value("cohort", "full")).value_or(Cohort::kFull);
  s.created_at = create.value("createdAt", std::int64_t{0});
  for (const auto& e : events) {
    if (e.action == "begin") s.begun = true;
    if (e.action == kFinishAction) s.finished_at = e.payload.value("finishedAt", std::int64_t{0});
    if (is_synthesis_action(e.action) && e.diagnostics.is_array()) s.diagnostics = e.diagnostics;
  }
  s.event_count = events.size();
  s.last_t = events.back().t;
  s.model = std::move(m);
  return s;
}

}  // namespace

SessionManager::SessionManager(std::shared_ptr<llm::CompletionBackend> backend, SessionOptions options)
    : backend_(std::move(backend)),
      options_(std::move(options)),
      orch_(backend_, options_.orchestrator, nullptr, options_.now_ms) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
              static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
  if (!options_.data_dir) return;
  fs::create_directories(*options_.data_dir);
  for (const auto& entry : fs::directory_iterator(*options_.data_dir)) {
    if (!entry.is_directory()) continue;
    auto recovered = SessionStore::recover(entry.path());
    if (!recovered) continue;
    const auto id = entry.path().filename().string();
    auto slot = std::make_shared<Slot>();
    slot->publish(std::make_shared<const SessionState>(state_from_log(id, recovered->events, std::move(recovered->model))));
    slot->events = std::move(recovered->events);
    slot->store = std::make_unique<SessionStore>(entry.path(), options_.sync, options_.fault_hook);
    // finish commits before model.json is written
    const auto state = slot->load();
    if (state->finished_at) {
      const auto document = model::encode_model_text(state->model);
      std::ifstream in(entry.path() / "model.json", std::ios::binary);
      const std::string on_disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (on_disk != document) slot->store->write_final_model(document);
    }
    sessions_[id] = std::move(slot);
  }
}

SessionManager::~SessionManager() = default;

std::int64_t SessionManager::now() const {
  if (options_.now_ms) return options_.now_ms();
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string SessionManager::new_id() {
  std::lock_guard lock(id_mu_);
  std::mt19937_64 rng(id_state_);
  id_state_ = rng();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

std::shared_ptr<SessionManager::Slot> SessionManager::slot(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kSessionNotFound, "no session '" + id + "'");
  return it->second;
}

std::string SessionManager::create_session(const std::string& prompt, Cohort cohort) {
  if (prompt::trim(prompt).empty()) throw Error(ErrorCode::kEmptyPrompt, "prompt is empty");
  std::string id;
  {
    std::shared_lock lock(mu_);
    do {
      id = new_id();
    } while (sessions_.contains(id));
  }
  auto slot = std::make_shared<Slot>();
  SessionState s;
  s.id = id;
  s.prompt = prompt;
  s.cohort = cohort;
  s.created_at = now();
  s.model.prompt = prompt;

  SessionEvent e;
  e.seq = 0;
  e.t = 0;
  e.actor = Actor::kUser;
  e.action = std::string(kCreateAction);
  e.payload = ordered_json{{"prompt", prompt}, {"cohort", to_string(cohort)}, {"createdAt", s.created_at}};
  if (options_.data_dir) {
    slot->store = std::make_unique<SessionStore>(*options_.data_dir / id, options_.sync, options_.fault_hook);
    slot->store->append_event(e);
  }
  s.event_count = 1;
  slot->events.push_back(std::move(e));
  slot->publish(std::make_shared<const SessionState>(std::move(s)));
  std::unique_lock lock(mu_);
  sessions_[id] = std::move(slot);
  return id;
}

void SessionManager::commit(Slot& slot, const SessionState& before, SessionEvent event, model::ObjectModel after,
                            const std::vector<prompt::PromptExchange>& exchanges, bool force_snapshot) {
  if (slot.store) {
    slot.store->append_exchanges(event.seq, exchanges);
    slot.store->append_event(event);
  }
  auto next = std::make_shared<SessionState>(before);
  next->model = std::move(after);
  next->event_count = event.seq + 1;
  next->last_t = event.t;
  if (event.action == "begin") next->begun = true;
  if (event.action == kFinishAction) next->finished_at = event.payload.value("finishedAt", std::int64_t{0});
  if (is_synthesis_action(event.action)) next->diagnostics = event.diagnostics;
  {
    std::lock_guard lock(slot.log_mu);
    slot.events.push_back(std::move(event));
  }
  slot.publish(next);

  if (!slot.store) return;
  if (force_snapshot || ++slot.since_snapshot >= options_.snapshot_every) {
    try {
      slot.store->write_snapshot(next->event_count - 1, next->model);
      slot.since_snapshot = 0;
    } catch (const Error& e) {
      // the log already holds the event; recovery replays past a stale snapshot
      std::fprintf(stderr, "snapshot of %s failed: %s\n", next->id.c_str(), e.what());
    }
  }
}

ActionResult SessionManager::apply_action(const std::string& id, const Action& action) {
  auto s = slot(id);
  std::unique_lock busy(s->action_mu, std::try_to_lock);
  if (!busy.owns_lock()) throw Error(ErrorCode::kBusy, "session '" + id + "' is busy");
  const auto before = s->load();
  if (before->finished_at) throw Error(ErrorCode::kSessionFinished, "session '" + id + "' is finished");

  model::ObjectModel work = before->model;
  auto outcome = execute_action(work, action, ActionContext{before->cohort, before->begun}, &orch_);

  SessionEvent e;
  e.seq = before->event_count;
  e.t = std::max(now() - before->created_at, before->last_t);
  e.actor = outcome.actor;
  e.action = outcome.action;
  e.payload = outcome.payload;
  e.component_count_after = model::component_count(work);
  if (is_synthesis_action(outcome.action)) {
    e.effect = outcome.effect;
    e.diagnostics = outcome.delta["diagnostics"];
  }
  commit(*s, *before, std::move(e), std::move(work), outcome.exchanges, false);
  return ActionResult{s->load(), std::move(outcome.delta)};
}

std::string SessionManager::finish_session(const std::string& id) {
  auto s = slot(id);
  std::unique_lock busy(s->action_mu, std::try_to_lock);
  if (!busy.owns_lock()) throw Error(ErrorCode::kBusy, "session '" + id + "' is busy");
  const auto before = s->load();
  if (before->finished_at) return model::encode_model_text(before->model);

  model::ObjectModel work = before->model;
  model::set_phase(work, model::Phase::kFinished);
  const auto finished_at = now();
  SessionEvent e;
  e.seq = before->event_count;
  e.t = std::max(finished_at - before->created_at, before->last_t);
  e.actor = Actor::kUser;
  e.action = std::string(kFinishAction);
  e.payload = ordered_json{{"finishedAt", finished_at}};
  e.component_count_after = model::component_count(work);
  const auto document = model::encode_model_text(work);
  commit(*s, *before, std::move(e), std::move(work), {}, true);
  if (s->store) s->store->write_final_model(document);
  return document;
}

std::shared_ptr<const SessionState> SessionManager::get_state(const std::string& id) const { return slot(id)->load(); }

std::vector<SessionEvent> SessionManager::log(const std::string& id) const {
  auto s = slot(id);
  std::lock_guard lock(s->log_mu);
  return s->events;
}

std::string SessionManager::log_text(const std::string& id) const {
  auto s = slot(id);
  std::string out;
  std::lock_guard lock(s->log_mu);
  for (const auto& e : s->events) out += encode_event_line(e);
  return out;
}

std::string SessionManager::export_model(const std::string& id, bool coerce_dangling) const {
  return model::export_model_text(get_state(id)->model, model::ExportOptions{.coerce_dangling_to_string = coerce_dangling});
}

std::vector<std::string> SessionManager::session_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace reify::session
