#pragma once

#include <string>
#include <vector>

#include "reify/model/object_model.hpp"

namespace reify::prompt {

// "The app has the following tables: a, b, c." or "" for no names.
std::string describe_tables(const std::vector<std::string>& names);
std::string describe_app(const model::ObjectModel& model);
// "a phone number" or "a list of reservations"
std::string field_phrase(const model::Field& field);
std::string describe_object(const model::ObjectDef& object);
std::vector<std::string> describe_objects(const model::ObjectModel& model);

// int, float, string, datetime, then the active object names.
std::vector<std::string> type_vocabulary(const model::ObjectModel& model);

// Order-preserving; matches on canonical form and naive singular/plural variants.
std::vector<std::string> dedupe_names(const std::vector<std::string>& candidates,
                                      const std::vector<std::string>& existing);
// Case-insensitive exact matches after stripping "()".
std::vector<std::string> dedupe_method_names(const std::vector<std::string>& candidates,
                                             const std::vector<std::string>& existing);

}  // namespace reify::prompt
