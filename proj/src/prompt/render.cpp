#include "reify/prompt/render.hpp"

#include <map>

#include "reify/error.hpp"
#include "reify/prompt/text.hpp"

namespace reify::prompt {

namespace {

bool present(const PromptContext& ctx, const std::string& field) {
  if (field == "userPrompt") return !trim(ctx.user_prompt).empty();
  if (field == "objectNames") return ctx.object_names.has_value();
  if (field == "objectName") return ctx.object_name.has_value() && !ctx.object_name->empty();
  if (field == "fieldPhrases") return ctx.field_phrases.has_value();
  if (field == "methodNames") return ctx.method_names.has_value();
  if (field == "typeVocabulary") return ctx.type_vocabulary.has_value() && !ctx.type_vocabulary->empty();
  if (field == "fieldName") return ctx.field_name.has_value() && !ctx.field_name->empty();
  if (field == "objectDescriptions") return ctx.object_descriptions.has_value();
  if (field == "priorExchange") return ctx.prior_exchange.has_value();
  return false;
}

std::string app_description(const PromptContext& ctx) {
  std::vector<std::string> parts{trim(ctx.user_prompt)};
  if (ctx.object_names && !ctx.object_names->empty()) {
    parts.push_back("The app has the following tables: " + join(*ctx.object_names, ", ") + ".");
  }
  if (ctx.object_descriptions) {
    for (const auto& d : *ctx.object_descriptions) parts.push_back(d);
  }
  return join(parts, " ");
}

std::map<std::string, std::string> slot_values(const PromptContext& ctx) {
  std::map<std::string, std::string> v;
  v["userPrompt"] = trim(ctx.user_prompt);
  v["appDescription"] = app_description(ctx);
  if (ctx.object_name) {
    v["objectName"] = *ctx.object_name;
    v["articleObject"] = with_article(*ctx.object_name);
  }
  if (ctx.type_vocabulary) v["typeVocabulary"] = join(*ctx.type_vocabulary, ", ");
  if (ctx.field_name) v["fieldName"] = *ctx.field_name;
  if (ctx.method_names) {
    std::vector<std::string> calls;
    for (const auto& m : *ctx.method_names) calls.push_back(m + "()");
    v["methodList"] = calls.empty() ? "none" : join(calls, ", ");
  }
  if (ctx.field_phrases) v["fieldList"] = ctx.field_phrases->empty() ? "nothing" : join_enumeration(*ctx.field_phrases);
  return v;
}

std::string substitute(const std::string& section, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = section.find("{{", pos);
    if (open == std::string::npos) break;
    const auto close = section.find("}}", open);
    const auto name = section.substr(open + 2, close - open - 2);
    auto it = values.find(name);
    if (it == values.end()) throw Error(ErrorCode::kMissingContext, name);
    out.append(section, pos, open - pos);
    out += it->second;
    pos = close + 2;
  }
  out.append(section, pos, std::string::npos);
  return out;
}

}  // namespace

std::string render_prompt(SubtaskKind kind, const PromptContext& ctx) {
  return render_prompt(default_catalog(), kind, ctx);
}

std::string render_prompt(const Catalog& catalog, SubtaskKind kind, const PromptContext& ctx) {
  const auto& spec = catalog.spec(kind);
  for (const auto& field : spec.required) {
    if (!present(ctx, field)) throw Error(ErrorCode::kMissingContext, field);
  }
  const auto values = slot_values(ctx);
  if (spec.continuation) {
    return ctx.prior_exchange->text + spec.turn_separator + substitute(spec.sections.front(), values);
  }
  std::size_t turn = ctx.prior_exchange ? ctx.prior_exchange->turns : 0;
  if (turn >= spec.sections.size()) {
    if (!spec.repeat_last_turn) {
      throw Error(ErrorCode::kPrecondition,
                  std::string(to_string(kind)) + " has only " + std::to_string(spec.sections.size()) + " turns");
    }
    turn = spec.sections.size() - 1;
  }
  const auto section = substitute(spec.sections[turn], values);
  if (!ctx.prior_exchange || ctx.prior_exchange->turns == 0) return section;
  return ctx.prior_exchange->text + spec.turn_separator + section;
}

Transcript append_completion(const PromptContext& ctx, std::string rendered, std::string_view completion) {
  Transcript t;
  t.text = std::move(rendered) + trim(completion);
  t.turns = (ctx.prior_exchange ? ctx.prior_exchange->turns : 0) + 1;
  return t;
}

}  // namespace reify::prompt
