#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reify/prompt/catalog.hpp"

namespace reify::prompt {

// Prompt text so far plus the completions appended to it.
struct Transcript {
  std::string text;
  std::size_t turns = 0;

  bool operator==(const Transcript&) const = default;
};

struct PromptContext {
  std::string user_prompt;
  std::optional<std::vector<std::string>> object_names;
  std::optional<std::string> object_name;
  std::optional<std::vector<std::string>> field_phrases;
  std::optional<std::vector<std::string>> method_names;
  std::optional<std::vector<std::string>> type_vocabulary;
  std::optional<std::string> field_name;
  // describe_object sentences, appended to the app description
  std::optional<std::vector<std::string>> object_descriptions;
  std::optional<Transcript> prior_exchange;
};

// Throws Error(kMissingContext) whose message is the wire name of the
// first absent required field.
std::string render_prompt(SubtaskKind kind, const PromptContext& ctx);
std::string render_prompt(const Catalog& catalog, SubtaskKind kind, const PromptContext& ctx);

// Transcript after `completion` answered `rendered`.
Transcript append_completion(const PromptContext& ctx, std::string rendered, std::string_view completion);

}  // namespace reify::prompt
