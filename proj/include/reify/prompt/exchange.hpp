#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "reify/prompt/catalog.hpp"

namespace reify::prompt {

struct PromptExchange {
  SubtaskKind kind;
  std::string rendered;
  std::string completion;
  nlohmann::ordered_json parsed;
  // milliseconds since the Unix epoch
  std::int64_t timestamp_ms = 0;
};

nlohmann::ordered_json encode_exchange(const PromptExchange& exchange);

}  // namespace reify::prompt
