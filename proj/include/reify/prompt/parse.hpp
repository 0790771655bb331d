#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "reify/model/object_model.hpp"
#include "reify/prompt/diagnostic.hpp"

namespace reify::prompt {

struct FieldPhrase {
  std::string raw;
  std::string name;
  model::Multiplicity multiplicity = model::Multiplicity::kOne;

  bool operator==(const FieldPhrase&) const = default;
};

Parsed<std::vector<std::string>> parse_name_list(std::string_view completion);
Parsed<std::vector<FieldPhrase>> parse_field_phrases(std::string_view completion);
model::Multiplicity infer_multiplicity(std::string_view raw);
// Out-of-vocabulary answers become string with a kLowConfidence diagnostic.
Parsed<model::FieldType> parse_type_answer(std::string_view completion, const std::vector<std::string>& vocabulary);
Parsed<std::vector<std::string>> parse_method_names(std::string_view completion);

}  // namespace reify::prompt
