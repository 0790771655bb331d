#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace reify::llm {

struct CompletionRequest {
  std::string prompt;
  std::string model_id = "text-davinci-001";
  double temperature = 0.0;
  double frequency_penalty = 0.0;
  double presence_penalty = 0.0;
  int max_tokens = 256;
  std::optional<std::vector<std::string>> stop_sequences;

  bool operator==(const CompletionRequest&) const = default;
};

struct CompletionResponse {
  std::string text;
  std::chrono::milliseconds latency{0};
  std::string provider;
};

// Throws Error(kInvalidArgument) for a negative temperature or maxTokens < 1.
void validate_request(const CompletionRequest& req);

// Sorted-key JSON of every digested field; absent stop sequences are null.
nlohmann::json canonical_request(const CompletionRequest& req);

// Lowercase hex SHA-256 of "reify-completion-v1\n" + compact canonical_request.
std::string request_digest(const CompletionRequest& req);

}  // namespace reify::llm
