#include "reify/prompt/exchange.hpp"

namespace reify::prompt {

nlohmann::ordered_json encode_exchange(const PromptExchange& exchange) {
  nlohmann::ordered_json out;
  out["kind"] = to_string(exchange.kind);
  out["rendered"] = exchange.rendered;
  out["completion"] = exchange.completion;
  out["parsed"] = exchange.parsed;
  out["timestamp"] = exchange.timestamp_ms;
  return out;
}

}  // namespace reify::prompt
