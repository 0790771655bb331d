#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "reify/model/object_model.hpp"

namespace reify::model {

// Canonical document: key order and component order are fixed, so equal
// models always encode to identical bytes.
nlohmann::ordered_json encode_model(const ObjectModel& model);
std::string encode_model_text(const ObjectModel& model);

nlohmann::ordered_json encode_field_type(const FieldType& type);
FieldType decode_field_type(const nlohmann::json& doc);

// Throws Error(kDecode) naming a byte offset (syntax errors) or a JSON pointer
// (schema errors).
ObjectModel decode_model(std::string_view text);
ObjectModel decode_model_json(const nlohmann::json& doc);

struct ExportOptions {
  // Retype active fields that point at deleted objects as string instead of
  // failing.
  bool coerce_dangling_to_string = false;
};

// Canonical document of a model that is safe to hand downstream. Fails with
// Error(kDanglingReference) while active fields still point at deleted objects.
std::string export_model_text(const ObjectModel& model, const ExportOptions& options = {});

}  // namespace reify::model
