#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "reify/llm/request.hpp"
#include "reify/orchestrator/orchestrator.hpp"

namespace reify::testing {

// Subtasks each button may render.
inline std::set<prompt::SubtaskKind> button_subtasks(orchestrator::ButtonAction action) {
  using orchestrator::ButtonAction;
  using prompt::SubtaskKind;
  switch (action) {
    case ButtonAction::kBegin: return {SubtaskKind::kST1_Initial, SubtaskKind::kST1_Followup};
    case ButtonAction::kAutoAddObjectInitial: return {SubtaskKind::kST2_MoreObjects};
    case ButtonAction::kGenerateFieldsAndMethods:
      return {SubtaskKind::kST3_Fields, SubtaskKind::kST4_Type, SubtaskKind::kST6_Methods};
    case ButtonAction::kAutoAddObjectFull:
      return {SubtaskKind::kST2_MoreObjects, SubtaskKind::kST3_Fields, SubtaskKind::kST4_Type,
              SubtaskKind::kST6_Methods};
    case ButtonAction::kAutoAddField: return {SubtaskKind::kST7_MoreFields, SubtaskKind::kST4_Type};
    case ButtonAction::kAutoAddMethod: return {SubtaskKind::kST8_MoreMethods};
  }
  return {};
}

struct AuditResult {
  bool ok = true;
  std::string message;
  std::map<prompt::SubtaskKind, std::size_t> counts;
};

// Checks one button run against the mapping: the requests that reached the
// instrumented backend are the recorded exchanges, in order, plus one per
// failed subtask; only permitted
// kinds occur, the mandatory ones occur once, ST4 runs once per typed field
// and ST6 three times per ST3.
inline AuditResult audit_button(const orchestrator::Delta& delta, const std::vector<llm::CompletionRequest>& requests) {
  using orchestrator::ButtonAction;
  using prompt::SubtaskKind;
  AuditResult r;
  auto fail = [&r](const std::string& m) {
    if (r.ok) r.message = m;
    r.ok = false;
  };
  // a failed subtask leaves one request behind without an exchange
  std::size_t failures = 0;
  for (const auto& d : delta.diagnostics) failures += d.code == prompt::DiagnosticCode::kSubtaskFailed ? 1 : 0;
  std::size_t next = 0, unrecorded = 0;
  for (const auto& req : requests) {
    if (next < delta.exchanges.size() && req.prompt == delta.exchanges[next].rendered) {
      ++next;
    } else {
      ++unrecorded;
    }
  }
  if (next != delta.exchanges.size()) fail("an exchange has no matching request");
  if (unrecorded > failures) fail("a request was not recorded");
  const auto allowed = button_subtasks(delta.action);
  for (const auto& e : delta.exchanges) {
    ++r.counts[e.kind];
    if (!allowed.contains(e.kind)) fail(std::string("unexpected ") + std::string(prompt::to_string(e.kind)));
  }
  auto count = [&r](SubtaskKind k) { return r.counts.contains(k) ? r.counts.at(k) : 0; };
  std::size_t field_additions = 0;
  for (const auto& p : delta.additions) field_additions += p.field ? 1 : 0;
  std::size_t failed_fields = 0;
  for (const auto& d : delta.diagnostics) {
    if (d.code == prompt::DiagnosticCode::kSubtaskFailed && d.subject.find('.') != std::string::npos) ++failed_fields;
  }
  switch (delta.action) {
    case ButtonAction::kBegin:
      if (count(SubtaskKind::kST1_Initial) != 1 || count(SubtaskKind::kST1_Followup) != 1) fail("ST1 must run twice");
      break;
    case ButtonAction::kAutoAddObjectInitial:
    case ButtonAction::kAutoAddMethod:
      if (r.counts.size() != 1 || r.counts.begin()->second != 1) fail("exactly one subtask call expected");
      break;
    case ButtonAction::kAutoAddObjectFull:
      if (count(SubtaskKind::kST2_MoreObjects) != 1) fail("ST2 must run once");
      [[fallthrough]];
    case ButtonAction::kGenerateFieldsAndMethods:
      if (count(SubtaskKind::kST6_Methods) != 3 * count(SubtaskKind::kST3_Fields)) fail("ST6 must run 3 turns per ST3");
      if (count(SubtaskKind::kST4_Type) != field_additions + failed_fields) fail("ST4 must run once per field");
      break;
    case ButtonAction::kAutoAddField:
      if (count(SubtaskKind::kST7_MoreFields) != 1) fail("ST7 must run once");
      if (count(SubtaskKind::kST4_Type) != field_additions + failed_fields) fail("ST4 must run once per field");
      break;
  }
  return r;
}

}  // namespace reify::testing
