#include "reify/llm/request.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>

#include "reify/error.hpp"

namespace reify::llm {

void validate_request(const CompletionRequest& req) {
  if (!(req.temperature >= 0.0) || !std::isfinite(req.temperature)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be a finite value >= 0");
  }
  if (req.max_tokens < 1) throw Error(ErrorCode::kInvalidArgument, "maxTokens must be >= 1");
  if (!std::isfinite(req.frequency_penalty) || !std::isfinite(req.presence_penalty)) {
    throw Error(ErrorCode::kInvalidArgument, "penalties must be finite");
  }
}

nlohmann::json canonical_request(const CompletionRequest& req) {
  nlohmann::json doc;
  doc["prompt"] = req.prompt;
  doc["modelId"] = req.model_id;
  doc["temperature"] = req.temperature;
  doc["frequencyPenalty"] = req.frequency_penalty;
  doc["presencePenalty"] = req.presence_penalty;
  doc["maxTokens"] = req.max_tokens;
  doc["stopSequences"] = req.stop_sequences ? nlohmann::json(*req.stop_sequences) : nlohmann::json(nullptr);
  return doc;
}

std::string request_digest(const CompletionRequest& req) {
  const std::string payload = "reify-completion-v1\n" + canonical_request(req).dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(payload.data(), payload.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kProvider, "SHA-256 unavailable");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

}  // namespace reify::llm
