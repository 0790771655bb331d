#include "reify/session/events.hpp"

#include "reify/error.hpp"
#include "reify/model/codec.hpp"
#include "reify/model/names.hpp"
#include "reify/model/ops.hpp"

namespace reify::session {

using model::ComponentPath;
using model::FieldId;
using model::MethodId;
using model::ObjectId;
using model::ObjectModel;
using nlohmann::json;
using nlohmann::ordered_json;
using orchestrator::ButtonAction;

std::string_view to_string(Cohort cohort) {
  return cohort == Cohort::kFull ? "full" : "controlNoSynthesis";
}

std::optional<Cohort> parse_cohort(std::string_view text) {
  if (text == "full") return Cohort::kFull;
  if (text == "controlNoSynthesis") return Cohort::kControlNoSynthesis;
  return std::nullopt;
}

std::string_view to_string(Actor actor) { return actor == Actor::kUser ? "user" : "automation"; }

std::optional<Actor> parse_actor(std::string_view text) {
  if (text == "user") return Actor::kUser;
  if (text == "automation") return Actor::kAutomation;
  return std::nullopt;
}

ordered_json encode_event(const SessionEvent& e) {
  ordered_json out;
  out["seq"] = e.seq;
  out["t"] = e.t;
  out["actor"] = to_string(e.actor);
  out["action"] = e.action;
  out["payload"] = e.payload;
  out["componentCountAfter"] = e.component_count_after;
  if (!e.effect.is_null()) out["effect"] = e.effect;
  if (!e.diagnostics.is_null()) out["diagnostics"] = e.diagnostics;
  return out;
}

std::string encode_event_line(const SessionEvent& e) { return encode_event(e).dump() + "\n"; }

SessionEvent decode_event(const json& doc) {
  try {
    SessionEvent e;
    e.seq = doc.at("seq").get<std::uint64_t>();
    e.t = doc.at("t").get<std::int64_t>();
    auto actor = parse_actor(doc.at("actor").get<std::string>());
    if (!actor) throw Error(ErrorCode::kDecode, "unknown actor");
    e.actor = *actor;
    e.action = doc.at("action").get<std::string>();
    e.payload = ordered_json::parse(doc.at("payload").dump());
    e.component_count_after = doc.at("componentCountAfter").get<std::size_t>();
    if (doc.contains("effect")) e.effect = ordered_json::parse(doc["effect"].dump());
    if (doc.contains("diagnostics")) e.diagnostics = ordered_json::parse(doc["diagnostics"].dump());
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kDecode, std::string("invalid session event: ") + ex.what());
  }
}

SessionEvent decode_event_line(std::string_view line) {
  // ordered parse keeps payload keys in their logged order
  ordered_json doc;
  try {
    doc = ordered_json::parse(line.begin(), line.end());
  } catch (const json::parse_error& ex) {
    throw Error(ErrorCode::kDecode, std::string("malformed event line: ") + ex.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kDecode, "event line is not an object");
  SessionEvent e = decode_event(json::parse(doc.dump()));
  e.payload = doc["payload"];
  if (doc.contains("effect")) e.effect = doc["effect"];
  if (doc.contains("diagnostics")) e.diagnostics = doc["diagnostics"];
  return e;
}

std::vector<SessionEvent> decode_log(std::string_view text) {
  std::vector<SessionEvent> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(decode_event_line(line));
    start = end + 1;
  }
  return out;
}

namespace {

const std::vector<std::string_view>& synthesis_actions() {
  static const std::vector<std::string_view> names{"begin",        "autoAddObject", "autoAddObjectInitial",
                                                   "autoAddObjectFull", "generateFieldsAndMethods", "autoAddField",
                                                   "autoAddMethod"};
  return names;
}

[[noreturn]] void bad_payload(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

std::string string_arg(const json& payload, const char* key) {
  auto it = payload.find(key);
  if (it == payload.end() || !it->is_string()) bad_payload(std::string("payload needs a string '") + key + "'");
  return it->get<std::string>();
}

// A component reference is an index or a name. Names resolve against active
// components, or any component when restoring.
ObjectId object_arg(const ObjectModel& m, const json& payload, bool any = false) {
  auto it = payload.find("object");
  if (it == payload.end()) bad_payload("payload needs 'object'");
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    const auto i = it->get<std::size_t>();
    if (i >= m.objects.size()) throw Error(ErrorCode::kNotFound, "no object at index " + std::to_string(i));
    return ObjectId{i};
  }
  if (!it->is_string()) bad_payload("'object' must be a name or an index");
  const auto name = it->get<std::string>();
  auto id = any ? model::find_object_any(m, name) : model::find_object(m, name);
  if (!id) throw Error(ErrorCode::kNotFound, "no object named '" + name + "'");
  return *id;
}

template <class Id, class Finder>
std::optional<Id> member_arg(const json& payload, const char* key, std::size_t size, Finder&& find) {
  auto it = payload.find(key);
  if (it == payload.end()) return std::nullopt;
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    const auto i = it->get<std::size_t>();
    if (i >= size) throw Error(ErrorCode::kNotFound, std::string("no ") + key + " at index " + std::to_string(i));
    return Id{i};
  }
  if (!it->is_string()) bad_payload(std::string("'") + key + "' must be a name or an index");
  const auto name = it->get<std::string>();
  auto id = find(name);
  if (!id) throw Error(ErrorCode::kNotFound, std::string("no ") + key + " named '" + name + "'");
  return id;
}

std::optional<FieldId> field_arg(const ObjectModel& m, ObjectId o, const json& payload, bool any = false) {
  const auto& obj = m.objects[o.index];
  return member_arg<FieldId>(payload, "field", obj.fields.size(), [&](const std::string& n) {
    return any ? model::find_field_any(obj, n) : model::find_field(obj, n);
  });
}

std::optional<MethodId> method_arg(const ObjectModel& m, ObjectId o, const json& payload, bool any = false) {
  const auto& obj = m.objects[o.index];
  return member_arg<MethodId>(payload, "method", obj.methods.size(), [&](const std::string& n) {
    return any ? model::find_method_any(obj, n) : model::find_method(obj, n);
  });
}

FieldId required_field(const ObjectModel& m, ObjectId o, const json& payload) {
  auto f = field_arg(m, o, payload);
  if (!f) bad_payload("payload needs 'field'");
  return *f;
}

ComponentPath path_arg(const ObjectModel& m, const json& payload, bool any) {
  const auto o = object_arg(m, payload, any);
  const auto f = field_arg(m, o, payload, any);
  const auto x = method_arg(m, o, payload, any);
  if (f && x) bad_payload("a path names a field or a method, not both");
  if (f) return ComponentPath::of(o, *f);
  if (x) return ComponentPath::of(o, *x);
  return ComponentPath::of(o);
}

// "int" and friends name primitives; anything else names an object.
model::FieldType type_arg(const json& v) {
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    if (auto p = model::parse_primitive(text)) return model::FieldType::primitive(*p);
    return model::FieldType::object_ref(model::canonical_name(text));
  }
  if (v.is_object()) return model::decode_field_type(v);
  bad_payload("'type' must be a primitive name, an object name or a type document");
}

model::Multiplicity multiplicity_arg(const json& v) {
  if (!v.is_string()) bad_payload("'multiplicity' must be \"one\" or \"many\"");
  auto m = model::parse_multiplicity(v.get<std::string>());
  if (!m) bad_payload("'multiplicity' must be \"one\" or \"many\"");
  return *m;
}

ordered_json encode_ref(const ComponentPath& p) { return orchestrator::encode_path(p); }

ordered_json edit_delta(const std::string& action, const ObjectModel& after,
                        const std::vector<ComponentPath>& additions) {
  orchestrator::Delta d{ButtonAction::kBegin, additions, {}, {}};
  auto out = orchestrator::encode_delta(d, after);
  out["action"] = action;
  return out;
}

ordered_json synthesis_effect(const orchestrator::Delta& delta, const ObjectModel& after) {
  auto added = ordered_json::array();
  for (const auto& p : delta.additions) {
    auto entry = encode_ref(p);
    const auto& obj = after.objects[p.object.index];
    if (p.field) {
      const auto& f = obj.fields[p.field->index];
      entry["name"] = f.name;
      entry["type"] = model::encode_field_type(f.type);
      entry["multiplicity"] = to_string(f.multiplicity);
      entry["provenance"] = to_string(f.provenance);
    } else if (p.method) {
      const auto& x = obj.methods[p.method->index];
      entry["name"] = x.name;
      entry["provenance"] = to_string(x.provenance);
    } else {
      entry["name"] = obj.name;
      entry["provenance"] = to_string(obj.provenance);
    }
    added.push_back(std::move(entry));
  }
  return ordered_json{{"phase", to_string(after.phase)}, {"added", std::move(added)}};
}

ActionOutcome run_synthesis(ObjectModel& m, const Action& a, const ActionContext& ctx,
                            const orchestrator::Orchestrator* orch) {
  if (ctx.cohort == Cohort::kControlNoSynthesis && a.name != "begin") {
    throw Error(ErrorCode::kCohortForbidden, a.name + " is not available in the control cohort");
  }
  if (a.name == "begin" && ctx.begun) throw Error(ErrorCode::kPrecondition, "begin was already pressed");
  if (a.name != "begin" && !ctx.begun) throw Error(ErrorCode::kPrecondition, "press begin first");

  ActionOutcome out;
  out.actor = Actor::kAutomation;
  out.action = a.name;
  out.payload = ordered_json::object();

  if (ctx.cohort == Cohort::kControlNoSynthesis) {
    // the control arm's Begin only starts the clock
    if (m.phase == model::Phase::kFinished) throw Error(ErrorCode::kPhaseFinished, "model is finished");
    out.actor = Actor::kUser;
    out.effect = ordered_json{{"phase", to_string(m.phase)}, {"added", ordered_json::array()}};
    out.delta = edit_delta(a.name, m, {});
    out.diagnostics = {};
    return out;
  }
  if (orch == nullptr) throw Error(ErrorCode::kPrecondition, "no completion backend configured");

  std::string object;
  if (a.name == "autoAddField" || a.name == "autoAddMethod") {
    object = model::canonical_name(string_arg(a.payload, "object"));
    out.payload["object"] = object;
  }
  std::string name = a.name;
  if (name == "autoAddObject") {
    name = m.phase == model::Phase::kFullModel ? "autoAddObjectFull" : "autoAddObjectInitial";
  } else if (name == "autoAddObjectInitial" && m.phase != model::Phase::kDraftingNames) {
    throw Error(ErrorCode::kPrecondition, "autoAddObjectInitial needs the drafting phase");
  } else if (name == "autoAddObjectFull" && m.phase != model::Phase::kFullModel) {
    throw Error(ErrorCode::kPrecondition, "autoAddObjectFull needs the full model phase");
  }
  out.action = name;

  orchestrator::Delta delta;
  if (name == "begin") {
    delta = orch->run_begin(m);
  } else if (name == "autoAddObjectInitial" || name == "autoAddObjectFull") {
    delta = orch->run_auto_add_object(m);
  } else if (name == "generateFieldsAndMethods") {
    delta = orch->run_generate_fields_and_methods(m);
  } else if (name == "autoAddField") {
    delta = orch->run_auto_add_field(m, object);
  } else {
    delta = orch->run_auto_add_method(m, object);
  }
  out.effect = synthesis_effect(delta, m);
  out.delta = orchestrator::encode_delta(delta, m);
  out.diagnostics = delta.diagnostics;
  out.exchanges = delta.exchanges;
  return out;
}

ActionOutcome run_edit(ObjectModel& m, const Action& a) {
  using model::Provenance;
  ActionOutcome out;
  out.actor = Actor::kUser;
  out.action = a.name;
  const json& p = a.payload;
  std::vector<ComponentPath> added;
  ordered_json norm;

  if (a.name == "addObject") {
    const auto name = string_arg(p, "name");
    added.push_back(ComponentPath::of(model::add_object(m, name, Provenance::kUserAdded)));
    norm["name"] = name;
  } else if (a.name == "renameObject") {
    const auto o = object_arg(m, p);
    const auto name = string_arg(p, "name");
    model::rename_object(m, o, name);
    norm["object"] = o.index;
    norm["name"] = name;
  } else if (a.name == "deleteComponent" || a.name == "restoreComponent") {
    const bool restoring = a.name == "restoreComponent";
    const auto path = path_arg(m, p, restoring);
    if (restoring) {
      model::restore(m, path);
    } else {
      model::soft_delete(m, path);
    }
    norm = encode_ref(path);
  } else if (a.name == "addField") {
    const auto o = object_arg(m, p);
    const auto name = string_arg(p, "name");
    const auto type = p.contains("type") ? type_arg(p["type"]) : model::FieldType::primitive(model::Primitive::kString);
    const auto mult = p.contains("multiplicity") ? multiplicity_arg(p["multiplicity"]) : model::Multiplicity::kOne;
    added.push_back(ComponentPath::of(o, model::add_field(m, o, name, type, mult, Provenance::kUserAdded)));
    norm["object"] = o.index;
    norm["name"] = name;
    norm["type"] = model::encode_field_type(type);
    norm["multiplicity"] = to_string(mult);
  } else if (a.name == "toggleMultiplicity" || a.name == "toggleTwoWay") {
    const auto o = object_arg(m, p);
    const auto f = required_field(m, o, p);
    if (a.name == "toggleMultiplicity") {
      model::toggle_multiplicity(m, o, f);
    } else {
      model::toggle_two_way(m, o, f);
    }
    norm["object"] = o.index;
    norm["field"] = f.index;
  } else if (a.name == "addMethod") {
    const auto o = object_arg(m, p);
    const auto name = string_arg(p, "name");
    added.push_back(ComponentPath::of(o, model::add_method(m, o, name, Provenance::kUserAdded)));
    norm["object"] = o.index;
    norm["name"] = name;
  } else if (a.name == "renameMethod") {
    const auto o = object_arg(m, p);
    const auto x = method_arg(m, o, p);
    if (!x) bad_payload("payload needs 'method'");
    const auto name = string_arg(p, "name");
    model::rename_method(m, o, *x, name);
    norm["object"] = o.index;
    norm["method"] = x->index;
    norm["name"] = name;
  } else if (a.name == "editField") {
    const auto o = object_arg(m, p);
    const auto f = required_field(m, o, p);
    model::FieldEdit edit;
    norm["object"] = o.index;
    norm["field"] = f.index;
    if (p.contains("name")) {
      edit.name = string_arg(p, "name");
      norm["name"] = *edit.name;
    }
    if (p.contains("type")) {
      edit.type = type_arg(p["type"]);
      norm["type"] = model::encode_field_type(*edit.type);
    }
    if (p.contains("multiplicity")) {
      edit.multiplicity = multiplicity_arg(p["multiplicity"]);
      norm["multiplicity"] = to_string(*edit.multiplicity);
    }
    model::edit_field(m, o, f, edit);
  } else {
    throw Error(ErrorCode::kUnknownAction, "unknown action '" + a.name + "'");
  }
  out.payload = std::move(norm);
  out.delta = edit_delta(a.name, m, added);
  return out;
}

}  // namespace

bool is_synthesis_action(std::string_view name) {
  for (auto n : synthesis_actions()) {
    if (n == name) return true;
  }
  return false;
}

ActionOutcome execute_action(ObjectModel& model, const Action& action, const ActionContext& ctx,
                             const orchestrator::Orchestrator* orch) {
  if (!action.payload.is_object()) bad_payload("payload must be an object");
  ObjectModel work = model;
  auto out = is_synthesis_action(action.name) ? run_synthesis(work, action, ctx, orch) : run_edit(work, action);
  model = std::move(work);
  return out;
}

namespace {

void apply_effect(ObjectModel& m, const SessionEvent& e) {
  using model::Provenance;
  auto fail = [&e](const std::string& what) -> void {
    throw Error(ErrorCode::kInconsistent, "event " + std::to_string(e.seq) + ": " + what);
  };
  if (!e.effect.is_object()) fail("synthesis event without an effect");
  try {
    for (const auto& entry : e.effect.at("added")) {
      const ObjectId o{entry.at("object").get<std::size_t>()};
      const auto name = entry.at("name").get<std::string>();
      auto prov = model::parse_provenance(entry.at("provenance").get<std::string>());
      if (!prov) fail("unknown provenance");
      if (entry.contains("field")) {
        auto mult = model::parse_multiplicity(entry.at("multiplicity").get<std::string>());
        if (!mult) fail("unknown multiplicity");
        const auto type = model::decode_field_type(json::parse(entry.at("type").dump()));
        if (model::add_field(m, o, name, type, *mult, *prov).index != entry["field"].get<std::size_t>()) {
          fail("field index differs from the log");
        }
      } else if (entry.contains("method")) {
        if (model::add_method(m, o, name, *prov).index != entry["method"].get<std::size_t>()) {
          fail("method index differs from the log");
        }
      } else if (model::add_object(m, name, *prov).index != o.index) {
        fail("object index differs from the log");
      }
    }
    auto phase = model::parse_phase(e.effect.at("phase").get<std::string>());
    if (!phase) fail("unknown phase");
    model::set_phase(m, *phase);
  } catch (const ordered_json::exception& ex) {
    fail(std::string("malformed effect: ") + ex.what());
  }
}

}  // namespace

void apply_event(ObjectModel& model, const SessionEvent& event) {
  if (event.action == kCreateAction) {
    model = ObjectModel{};
    model.prompt = event.payload.value("prompt", "");
    return;
  }
  if (event.action == kFinishAction) {
    model::set_phase(model, model::Phase::kFinished);
    return;
  }
  ObjectModel work = model;
  if (is_synthesis_action(event.action)) {
    apply_effect(work, event);
  } else {
    run_edit(work, Action{event.action, json::parse(event.payload.dump())});
  }
  model = std::move(work);
}

namespace {

template <class OnEvent>
ObjectModel replay_each(const std::vector<SessionEvent>& events, const orchestrator::Orchestrator* orch,
                        OnEvent&& on_event) {
  if (events.empty() || events.front().action != kCreateAction) {
    throw Error(ErrorCode::kInconsistent, "log does not start with " + std::string(kCreateAction));
  }
  ObjectModel m;
  ActionContext ctx;
  auto cohort = parse_cohort(events.front().payload.value("cohort", "full"));
  if (!cohort) throw Error(ErrorCode::kInconsistent, "unknown cohort in log");
  ctx.cohort = *cohort;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.seq != i) throw Error(ErrorCode::kInconsistent, "event " + std::to_string(i) + " has seq " + std::to_string(e.seq));
    if (i > 0 && e.action == kCreateAction) throw Error(ErrorCode::kInconsistent, "second createSession event");
    if (orch != nullptr && is_synthesis_action(e.action)) {
      auto out = execute_action(m, Action{e.action, json::parse(e.payload.dump())}, ctx, orch);
      if (out.effect != e.effect || out.action != e.action) {
        throw Error(ErrorCode::kInconsistent, "event " + std::to_string(i) + " (" + e.action + ") did not reproduce");
      }
    } else {
      apply_event(m, e);
    }
    if (e.action == "begin") ctx.begun = true;
    on_event(e, m);
  }
  return m;
}

}  // namespace

ObjectModel replay_log(const std::vector<SessionEvent>& events, const orchestrator::Orchestrator* orch) {
  return replay_each(events, orch, [](const SessionEvent& e, const ObjectModel& m) {
    if (model::component_count(m) != e.component_count_after) {
      throw Error(ErrorCode::kInconsistent, "event " + std::to_string(e.seq) + " count " +
                                                std::to_string(e.component_count_after) + " differs from replay " +
                                                std::to_string(model::component_count(m)));
    }
  });
}

std::vector<std::size_t> replay_counts(const std::vector<SessionEvent>& events) {
  std::vector<std::size_t> out;
  replay_each(events, nullptr, [&out](const SessionEvent&, const ObjectModel& m) { out.push_back(model::component_count(m)); });
  return out;
}

}  // namespace reify::session
