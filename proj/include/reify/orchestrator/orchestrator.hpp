#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reify/llm/backend.hpp"
#include "reify/model/object_model.hpp"
#include "reify/prompt/catalog.hpp"
#include "reify/prompt/diagnostic.hpp"
#include "reify/prompt/exchange.hpp"
#include "reify/prompt/parse.hpp"

namespace reify::orchestrator {

enum class ButtonAction {
  kBegin,
  kAutoAddObjectInitial,
  kGenerateFieldsAndMethods,
  kAutoAddObjectFull,
  kAutoAddField,
  kAutoAddMethod,
};

std::string_view to_string(ButtonAction action);

// What one button press added. The orchestrator never edits or removes
// existing components.
struct Delta {
  ButtonAction action;
  std::vector<model::ComponentPath> additions;
  std::vector<prompt::Diagnostic> diagnostics;
  std::vector<prompt::PromptExchange> exchanges;
};

nlohmann::ordered_json encode_path(const model::ComponentPath& path);
nlohmann::ordered_json encode_delta(const Delta& delta, const model::ObjectModel& after);

struct OrchestratorConfig {
  std::string model_id = "text-davinci-001";
  int max_tokens = 256;
  // new objects taken from one ST2 answer
  std::size_t max_new_objects = 3;
};

class Orchestrator {
 public:
  using Clock = std::function<std::int64_t()>;

  explicit Orchestrator(std::shared_ptr<llm::CompletionBackend> backend, OrchestratorConfig config = {},
                        const prompt::Catalog* catalog = nullptr, Clock clock = nullptr);

  // Each run leaves `model` untouched when it throws.
  Delta run_begin(model::ObjectModel& model) const;
  // Phase decides between the initial (names only) and full variants.
  Delta run_auto_add_object(model::ObjectModel& model) const;
  Delta run_generate_fields_and_methods(model::ObjectModel& model) const;
  Delta run_auto_add_field(model::ObjectModel& model, const std::string& object_name) const;
  Delta run_auto_add_method(model::ObjectModel& model, const std::string& object_name) const;

 private:
  struct Run;

  const prompt::Catalog& catalog() const;
  void populate_object(Run& run, model::ObjectId id) const;
  void add_typed_fields(Run& run, model::ObjectId id, const std::vector<prompt::FieldPhrase>& phrases) const;

  std::shared_ptr<llm::CompletionBackend> backend_;
  OrchestratorConfig config_;
  const prompt::Catalog* catalog_;
  Clock clock_;
};

}  // namespace reify::orchestrator
