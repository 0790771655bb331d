#include "reify/llm/live.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "reify/error.hpp"

namespace reify::llm {

ProviderProfile ProviderProfile::from_json(const nlohmann::json& doc) {
  ProviderProfile p;
  try {
    p.name = doc.value("name", p.name);
    p.endpoint = doc.value("endpoint", p.endpoint);
    p.credential_env = doc.value("credentialEnv", p.credential_env);
    p.auth_header = doc.value("authHeader", p.auth_header);
    p.auth_prefix = doc.value("authPrefix", p.auth_prefix);
    if (doc.contains("requestFields")) {
      for (const auto& [k, v] : doc.at("requestFields").items()) {
        if (!p.request_fields.contains(k)) throw Error(ErrorCode::kInvalidArgument, "unknown request field " + k);
        p.request_fields[k] = v.get<std::string>();
      }
    }
    p.response_text_pointer = doc.value("responseTextPointer", p.response_text_pointer);
    p.max_retries = doc.value("maxRetries", p.max_retries);
    p.initial_backoff = std::chrono::milliseconds(doc.value("initialBackoffMs", p.initial_backoff.count()));
    p.timeout = std::chrono::milliseconds(doc.value("timeoutMs", p.timeout.count()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("provider profile: ") + e.what());
  }
  if (doc.contains("apiKey") || doc.contains("credential")) {
    throw Error(ErrorCode::kInvalidArgument, "provider profile must not contain credentials; use credentialEnv");
  }
  if (p.max_retries < 0) throw Error(ErrorCode::kInvalidArgument, "maxRetries must be >= 0");
  return p;
}

ProviderProfile ProviderProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read provider profile " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("provider profile: ") + e.what());
  }
}

LiveBackend::LiveBackend(ProviderProfile profile, std::shared_ptr<HttpTransport> transport, EnvLookup env,
                         Sleeper sleep)
    : profile_(std::move(profile)), transport_(std::move(transport)), env_(std::move(env)), sleep_(std::move(sleep)) {
  if (!transport_) transport_ = std::make_shared<HttplibTransport>();
  if (!env_) {
    env_ = [](const std::string& name) -> std::optional<std::string> {
      const char* v = std::getenv(name.c_str());
      if (!v || !*v) return std::nullopt;
      return std::string(v);
    };
  }
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string LiveBackend::request_body(const CompletionRequest& req) const {
  const auto& f = profile_.request_fields;
  nlohmann::ordered_json body;
  body[f.at("model")] = req.model_id;
  body[f.at("prompt")] = req.prompt;
  body[f.at("temperature")] = req.temperature;
  body[f.at("frequencyPenalty")] = req.frequency_penalty;
  body[f.at("presencePenalty")] = req.presence_penalty;
  body[f.at("maxTokens")] = req.max_tokens;
  if (req.stop_sequences) body[f.at("stop")] = *req.stop_sequences;
  return body.dump();
}

CompletionResponse LiveBackend::complete(const CompletionRequest& req) {
  validate_request(req);
  const auto credential = env_(profile_.credential_env);
  if (!credential) throw Error(ErrorCode::kAuthMissing, "environment variable " + profile_.credential_env + " is not set");
  const std::map<std::string, std::string> headers{{profile_.auth_header, profile_.auth_prefix + *credential}};
  const auto body = request_body(req);

  auto backoff = profile_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = transport_->post(profile_.endpoint, headers, body, profile_.timeout);
    const auto latency =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    const bool last = attempt >= profile_.max_retries;

    if (r.timed_out || r.transport_error) {
      if (last) {
        if (r.timed_out) throw Error(ErrorCode::kTimeout, "no response from " + profile_.endpoint);
        throw Error(ErrorCode::kProvider, "cannot reach " + profile_.endpoint);
      }
    } else if (r.status == 429 || r.status >= 500) {
      if (last) {
        if (r.status == 429) throw Error(ErrorCode::kRateLimited, "rate limited after " + std::to_string(attempt + 1) + " attempts");
        throw Error(ErrorCode::kProvider, "provider status " + std::to_string(r.status));
      }
    } else if (r.status == 401 || r.status == 403) {
      throw Error(ErrorCode::kAuthMissing, "credential rejected (status " + std::to_string(r.status) + ")");
    } else if (r.status < 200 || r.status >= 300) {
      throw Error(ErrorCode::kProvider, "provider status " + std::to_string(r.status) + ": " + r.body.substr(0, 200));
    } else {
      try {
        const auto doc = nlohmann::json::parse(r.body);
        const auto& text = doc.at(nlohmann::json::json_pointer(profile_.response_text_pointer));
        return CompletionResponse{text.get<std::string>(), latency, profile_.name};
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kProvider, std::string("unexpected provider response: ") + e.what());
      }
    }
    sleep_(backoff);
    backoff *= 2;
  }
}

}  // namespace reify::llm
