#include "reify/orchestrator/orchestrator.hpp"

#include <algorithm>
#include <chrono>

#include "reify/error.hpp"
#include "reify/model/codec.hpp"
#include "reify/model/ops.hpp"
#include "reify/prompt/describe.hpp"
#include "reify/prompt/render.hpp"
#include "reify/prompt/text.hpp"

namespace reify::orchestrator {

using model::ComponentPath;
using model::ObjectId;
using model::ObjectModel;
using model::Phase;
using model::Provenance;
using prompt::Diagnostic;
using prompt::DiagnosticCode;
using prompt::PromptContext;
using prompt::SubtaskKind;

std::string_view to_string(ButtonAction action) {
  switch (action) {
    case ButtonAction::kBegin: return "begin";
    case ButtonAction::kAutoAddObjectInitial: return "autoAddObjectInitial";
    case ButtonAction::kGenerateFieldsAndMethods: return "generateFieldsAndMethods";
    case ButtonAction::kAutoAddObjectFull: return "autoAddObjectFull";
    case ButtonAction::kAutoAddField: return "autoAddField";
    case ButtonAction::kAutoAddMethod: return "autoAddMethod";
  }
  return "unknown";
}

nlohmann::ordered_json encode_path(const ComponentPath& path) {
  nlohmann::ordered_json out;
  out["object"] = path.object.index;
  if (path.field) out["field"] = path.field->index;
  if (path.method) out["method"] = path.method->index;
  return out;
}

nlohmann::ordered_json encode_delta(const Delta& delta, const ObjectModel& after) {
  nlohmann::ordered_json out;
  out["action"] = to_string(delta.action);
  auto additions = nlohmann::ordered_json::array();
  for (const auto& p : delta.additions) {
    auto a = encode_path(p);
    a["path"] = model::describe_path(after, p);
    additions.push_back(std::move(a));
  }
  out["additions"] = std::move(additions);
  auto diagnostics = nlohmann::ordered_json::array();
  for (const auto& d : delta.diagnostics) {
    diagnostics.push_back({{"code", prompt::to_string(d.code)}, {"message", d.message}, {"subject", d.subject}});
  }
  out["diagnostics"] = std::move(diagnostics);
  auto exchanges = nlohmann::ordered_json::array();
  for (const auto& e : delta.exchanges) exchanges.push_back(prompt::encode_exchange(e));
  out["exchanges"] = std::move(exchanges);
  return out;
}

namespace {

void precondition(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kPrecondition, what);
}

void require_not_finished(const ObjectModel& m) {
  if (m.phase == Phase::kFinished) throw Error(ErrorCode::kPhaseFinished, "session is finished");
}

ObjectId require_active_object(const ObjectModel& m, const std::string& name) {
  auto id = model::find_object(m, name);
  if (!id) throw Error(ErrorCode::kNotFound, "no active object named '" + name + "'");
  return *id;
}

std::vector<std::string> phrase_names(const std::vector<prompt::FieldPhrase>& phrases) {
  std::vector<std::string> out;
  for (const auto& p : phrases) out.push_back(p.name);
  return out;
}

nlohmann::ordered_json encode_phrases(const std::vector<prompt::FieldPhrase>& phrases) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& p : phrases) {
    out.push_back({{"raw", p.raw}, {"name", p.name}, {"multiplicity", model::to_string(p.multiplicity)}});
  }
  return out;
}

void add_subject(std::vector<Diagnostic>& into, std::vector<Diagnostic> from, const std::string& subject) {
  for (auto& d : from) {
    if (d.subject.empty()) d.subject = subject;
    into.push_back(std::move(d));
  }
}

}  // namespace

struct Orchestrator::Run {
  const Orchestrator& self;
  ObjectModel m;
  Delta delta;

  // Renders, completes and records one exchange; returns its index.
  std::size_t ask(SubtaskKind kind, const PromptContext& ctx) {
    const auto rendered = prompt::render_prompt(self.catalog(), kind, ctx);
    llm::CompletionRequest req;
    req.prompt = rendered;
    req.model_id = self.config_.model_id;
    req.max_tokens = self.config_.max_tokens;
    const auto& stops = self.catalog().spec(kind).stop_sequences;
    if (!stops.empty()) req.stop_sequences = stops;
    auto response = self.backend_->complete(req);
    delta.exchanges.push_back(prompt::PromptExchange{kind, rendered, std::move(response.text), nullptr, self.clock_()});
    return delta.exchanges.size() - 1;
  }

  prompt::PromptExchange& exchange(std::size_t i) { return delta.exchanges[i]; }

  void note(DiagnosticCode code, std::string message, std::string subject) {
    delta.diagnostics.push_back(Diagnostic{code, std::move(message), std::move(subject)});
  }
};

Orchestrator::Orchestrator(std::shared_ptr<llm::CompletionBackend> backend, OrchestratorConfig config,
                           const prompt::Catalog* catalog, Clock clock)
    : backend_(std::move(backend)), config_(std::move(config)), catalog_(catalog), clock_(std::move(clock)) {
  if (!backend_) throw Error(ErrorCode::kInvalidArgument, "orchestrator needs a completion backend");
  if (!clock_) {
    clock_ = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
}

const prompt::Catalog& Orchestrator::catalog() const { return catalog_ ? *catalog_ : prompt::default_catalog(); }

Delta Orchestrator::run_begin(ObjectModel& model) const {
  require_not_finished(model);
  precondition(model.phase == Phase::kDraftingNames, "begin needs the drafting phase");
  precondition(model::active_object_names(model).empty(), "begin needs a model without objects");
  Run run{*this, model, Delta{ButtonAction::kBegin, {}, {}, {}}};

  PromptContext ctx;
  ctx.user_prompt = model.prompt;
  const auto first = run.ask(SubtaskKind::kST1_Initial, ctx);
  auto names = prompt::parse_name_list(run.exchange(first).completion);
  run.exchange(first).parsed = names.value;
  add_subject(run.delta.diagnostics, names.diagnostics, "ST1_Initial");

  PromptContext follow;
  follow.user_prompt = model.prompt;
  follow.prior_exchange = prompt::append_completion(ctx, run.exchange(first).rendered, run.exchange(first).completion);
  const auto second = run.ask(SubtaskKind::kST1_Followup, follow);
  auto more = prompt::parse_name_list(run.exchange(second).completion);
  run.exchange(second).parsed = more.value;
  add_subject(run.delta.diagnostics, more.diagnostics, "ST1_Followup");

  auto all = names.value;
  all.insert(all.end(), more.value.begin(), more.value.end());
  for (const auto& name : prompt::dedupe_names(all, model::active_object_names(run.m))) {
    run.delta.additions.push_back(ComponentPath::of(model::add_object(run.m, name, Provenance::kSynthesized)));
  }
  model = std::move(run.m);
  return std::move(run.delta);
}

Delta Orchestrator::run_auto_add_object(ObjectModel& model) const {
  require_not_finished(model);
  const auto existing = model::active_object_names(model);
  precondition(!existing.empty(), "auto add object needs at least one object");
  const bool full = model.phase == Phase::kFullModel;
  Run run{*this, model, Delta{full ? ButtonAction::kAutoAddObjectFull : ButtonAction::kAutoAddObjectInitial, {}, {}, {}}};

  PromptContext ctx;
  ctx.user_prompt = model.prompt;
  ctx.object_names = existing;
  const auto ex = run.ask(SubtaskKind::kST2_MoreObjects, ctx);
  auto parsed = prompt::parse_name_list(run.exchange(ex).completion);
  run.exchange(ex).parsed = parsed.value;
  add_subject(run.delta.diagnostics, parsed.diagnostics, "ST2_MoreObjects");

  auto fresh = prompt::dedupe_names(parsed.value, existing);
  if (!parsed.value.empty() && fresh.empty()) {
    run.note(DiagnosticCode::kAllDuplicates, "every suggested table already exists", "ST2_MoreObjects");
  }
  if (fresh.size() > config_.max_new_objects) fresh.resize(config_.max_new_objects);
  std::vector<ObjectId> added;
  for (const auto& name : fresh) {
    added.push_back(model::add_object(run.m, name, Provenance::kSynthesized));
    run.delta.additions.push_back(ComponentPath::of(added.back()));
  }
  if (full) {
    for (auto id : added) {
      try {
        populate_object(run, id);
      } catch (const Error& e) {
        run.note(DiagnosticCode::kSubtaskFailed, e.what(), run.m.objects[id.index].name);
      }
    }
  }
  model = std::move(run.m);
  return std::move(run.delta);
}

Delta Orchestrator::run_generate_fields_and_methods(ObjectModel& model) const {
  require_not_finished(model);
  precondition(model.phase == Phase::kDraftingNames, "fields and methods are generated once, from the drafting phase");
  precondition(!model::active_object_names(model).empty(), "generate needs at least one object");
  Run run{*this, model, Delta{ButtonAction::kGenerateFieldsAndMethods, {}, {}, {}}};

  std::vector<ObjectId> targets;
  for (std::size_t i = 0; i < run.m.objects.size(); ++i) {
    if (!run.m.objects[i].deleted) targets.push_back(ObjectId{i});
  }
  for (auto id : targets) {
    try {
      populate_object(run, id);
    } catch (const Error& e) {
      run.note(DiagnosticCode::kSubtaskFailed, e.what(), run.m.objects[id.index].name);
    }
  }
  model::set_phase(run.m, Phase::kFullModel);
  model = std::move(run.m);
  return std::move(run.delta);
}

Delta Orchestrator::run_auto_add_field(ObjectModel& model, const std::string& object_name) const {
  require_not_finished(model);
  precondition(model.phase == Phase::kFullModel, "auto add field needs the full model phase");
  const auto id = require_active_object(model, object_name);
  Run run{*this, model, Delta{ButtonAction::kAutoAddField, {}, {}, {}}};
  const auto& name = run.m.objects[id.index].name;

  PromptContext ctx;
  ctx.user_prompt = model.prompt;
  ctx.object_name = name;
  ctx.object_descriptions = prompt::describe_objects(run.m);
  const auto ex = run.ask(SubtaskKind::kST7_MoreFields, ctx);
  auto parsed = prompt::parse_field_phrases(run.exchange(ex).completion);
  run.exchange(ex).parsed = encode_phrases(parsed.value);
  add_subject(run.delta.diagnostics, parsed.diagnostics, name);

  const auto keep = prompt::dedupe_names(phrase_names(parsed.value), model::active_field_names(run.m.objects[id.index]));
  std::vector<prompt::FieldPhrase> fresh;
  for (const auto& p : parsed.value) {
    if (std::find(keep.begin(), keep.end(), p.name) != keep.end()) fresh.push_back(p);
  }
  if (!parsed.value.empty() && fresh.empty()) {
    run.note(DiagnosticCode::kAllDuplicates, "every suggested field already exists", name);
  }
  add_typed_fields(run, id, fresh);
  model = std::move(run.m);
  return std::move(run.delta);
}

Delta Orchestrator::run_auto_add_method(ObjectModel& model, const std::string& object_name) const {
  require_not_finished(model);
  precondition(model.phase == Phase::kFullModel, "auto add method needs the full model phase");
  const auto id = require_active_object(model, object_name);
  Run run{*this, model, Delta{ButtonAction::kAutoAddMethod, {}, {}, {}}};
  const auto& name = run.m.objects[id.index].name;

  PromptContext ctx;
  ctx.user_prompt = model.prompt;
  ctx.object_name = name;
  ctx.method_names = model::active_method_names(run.m.objects[id.index]);
  const auto ex = run.ask(SubtaskKind::kST8_MoreMethods, ctx);
  auto parsed = prompt::parse_method_names(run.exchange(ex).completion);
  run.exchange(ex).parsed = parsed.value;
  add_subject(run.delta.diagnostics, parsed.diagnostics, name);

  const auto fresh = prompt::dedupe_method_names(parsed.value, *ctx.method_names);
  if (!parsed.value.empty() && fresh.empty()) {
    run.note(DiagnosticCode::kAllDuplicates, "every suggested method already exists", name);
  }
  for (const auto& m : fresh) {
    run.delta.additions.push_back(ComponentPath::of(id, model::add_method(run.m, id, m, Provenance::kSynthesized)));
  }
  model = std::move(run.m);
  return std::move(run.delta);
}

void Orchestrator::populate_object(Run& run, ObjectId id) const {
  const std::string name = run.m.objects[id.index].name;
  PromptContext ctx;
  ctx.user_prompt = run.m.prompt;
  ctx.object_name = name;

  // ST3, then ST4 and ST5 per field
  const auto fields_ex = run.ask(SubtaskKind::kST3_Fields, ctx);
  auto phrases = prompt::parse_field_phrases(run.exchange(fields_ex).completion);
  run.exchange(fields_ex).parsed = encode_phrases(phrases.value);
  add_subject(run.delta.diagnostics, phrases.diagnostics, name);
  const auto keep = prompt::dedupe_names(phrase_names(phrases.value), model::active_field_names(run.m.objects[id.index]));
  std::vector<prompt::FieldPhrase> fresh;
  for (const auto& p : phrases.value) {
    if (std::find(keep.begin(), keep.end(), p.name) != keep.end()) fresh.push_back(p);
  }
  add_typed_fields(run, id, fresh);

  // ST6 as three chained turns
  std::size_t last = 0;
  for (int turn = 0; turn < 3; ++turn) {
    last = run.ask(SubtaskKind::kST6_Methods, ctx);
    ctx.prior_exchange = prompt::append_completion(ctx, run.exchange(last).rendered, run.exchange(last).completion);
  }
  auto methods = prompt::parse_method_names(run.exchange(last).completion);
  run.exchange(last).parsed = methods.value;
  add_subject(run.delta.diagnostics, methods.diagnostics, name);
  for (const auto& m : prompt::dedupe_method_names(methods.value, model::active_method_names(run.m.objects[id.index]))) {
    run.delta.additions.push_back(ComponentPath::of(id, model::add_method(run.m, id, m, Provenance::kSynthesized)));
  }
}

void Orchestrator::add_typed_fields(Run& run, ObjectId id, const std::vector<prompt::FieldPhrase>& phrases) const {
  const std::string object_name = run.m.objects[id.index].name;
  PromptContext ctx;
  ctx.type_vocabulary = prompt::type_vocabulary(run.m);
  for (const auto& phrase : phrases) {
    ctx.field_name = prompt::strip_determiners(phrase.raw);
    const auto ex = run.ask(SubtaskKind::kST4_Type, ctx);
    auto type = prompt::parse_type_answer(run.exchange(ex).completion, *ctx.type_vocabulary);
    run.exchange(ex).parsed = model::encode_field_type(type.value);
    add_subject(run.delta.diagnostics, type.diagnostics, object_name + "." + phrase.name);
    ctx.prior_exchange = prompt::append_completion(ctx, run.exchange(ex).rendered, run.exchange(ex).completion);
    try {
      const auto f = model::add_field(run.m, id, phrase.name, type.value, phrase.multiplicity, Provenance::kSynthesized);
      run.delta.additions.push_back(ComponentPath::of(id, f));
    } catch (const Error& e) {
      run.note(DiagnosticCode::kSubtaskFailed, e.what(), object_name + "." + phrase.name);
    }
  }
}

}  // namespace reify::orchestrator
