#pragma once

#include <string>
#include <string_view>

namespace reify::model {

// Object and field names: lowercase, trimmed, single internal spaces.
std::string canonical_name(std::string_view raw);

// Method names keep their case; surrounding whitespace and any trailing "()"
// are removed.
std::string canonical_method_name(std::string_view raw);

}  // namespace reify::model
