#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reify/model/object_model.hpp"
#include "reify/orchestrator/orchestrator.hpp"

namespace reify::session {

enum class Cohort { kFull, kControlNoSynthesis };
enum class Actor { kUser, kAutomation };

std::string_view to_string(Cohort cohort);
std::optional<Cohort> parse_cohort(std::string_view text);
std::string_view to_string(Actor actor);
std::optional<Actor> parse_actor(std::string_view text);

// One line of events.jsonl. The first event of a session is createSession,
// the last of a finished one is finish.
//
// Synthesis events carry their effect (every added component with its data,
// plus the phase afterwards) so a log replays without a completion backend.
// Edit events replay by running the edit again on the normalized payload,
// whose component references are indices.
struct SessionEvent {
  std::uint64_t seq = 0;
  // milliseconds since session creation
  std::int64_t t = 0;
  Actor actor = Actor::kUser;
  std::string action;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  std::size_t component_count_after = 0;
  nlohmann::ordered_json effect;
  nlohmann::ordered_json diagnostics;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

nlohmann::ordered_json encode_event(const SessionEvent& event);
std::string encode_event_line(const SessionEvent& event);
SessionEvent decode_event(const nlohmann::json& doc);
SessionEvent decode_event_line(std::string_view line);
// Parses a whole JSON Lines log; blank lines are skipped.
std::vector<SessionEvent> decode_log(std::string_view text);

inline constexpr std::string_view kCreateAction = "createSession";
inline constexpr std::string_view kFinishAction = "finish";

struct Action {
  std::string name;
  nlohmann::json payload = nlohmann::json::object();
};

bool is_synthesis_action(std::string_view name);

// Session facts the action rules depend on.
struct ActionContext {
  Cohort cohort = Cohort::kFull;
  bool begun = false;
};

struct ActionOutcome {
  std::string action;
  Actor actor = Actor::kUser;
  nlohmann::ordered_json payload;
  nlohmann::ordered_json effect;
  // what the caller gets back: {action, additions, diagnostics, exchanges}
  nlohmann::ordered_json delta;
  std::vector<prompt::Diagnostic> diagnostics;
  std::vector<prompt::PromptExchange> exchanges;
};

// Runs one wire action on `model`. Synthesis actions need `orch`; edits
// ignore it. Throws reify::Error and leaves the model untouched on failure.
ActionOutcome execute_action(model::ObjectModel& model, const Action& action, const ActionContext& ctx,
                             const orchestrator::Orchestrator* orch);

// Reapplies a logged event: synthesis from its effect, edits by running them.
void apply_event(model::ObjectModel& model, const SessionEvent& event);

// Rebuilds the model from a complete log starting at createSession. With an
// orchestrator, synthesis events are executed again and must reproduce
// their recorded effect (kInconsistent otherwise).
model::ObjectModel replay_log(const std::vector<SessionEvent>& events, const orchestrator::Orchestrator* orch = nullptr);

// Component counts after each event, recomputed by replay.
std::vector<std::size_t> replay_counts(const std::vector<SessionEvent>& events);

}  // namespace reify::session
