#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "reify/llm/backend.hpp"

namespace reify::llm {

struct HttpResult {
  int status = 0;
  std::string body;
  // no response at all (refused, reset, DNS)
  bool transport_error = false;
  bool timed_out = false;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResult post(const std::string& url, const std::map<std::string, std::string>& headers,
                          const std::string& body, std::chrono::milliseconds timeout) = 0;
};

// cpp-httplib client; http:// and https:// URLs.
class HttplibTransport : public HttpTransport {
 public:
  HttpResult post(const std::string& url, const std::map<std::string, std::string>& headers, const std::string& body,
                  std::chrono::milliseconds timeout) override;
};

struct ProviderProfile {
  std::string name = "openai-completions";
  std::string endpoint = "https://api.openai.com/v1/completions";
  std::string credential_env = "OPENAI_API_KEY";
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  // request field names, keyed by prompt, model, temperature, frequencyPenalty,
  // presencePenalty, maxTokens, stop
  std::map<std::string, std::string> request_fields{
      {"prompt", "prompt"},
      {"model", "model"},
      {"temperature", "temperature"},
      {"frequencyPenalty", "frequency_penalty"},
      {"presencePenalty", "presence_penalty"},
      {"maxTokens", "max_tokens"},
      {"stop", "stop"},
  };
  // JSON pointer to the completion text in the response
  std::string response_text_pointer = "/choices/0/text";
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds timeout{30000};

  static ProviderProfile from_json(const nlohmann::json& doc);
  static ProviderProfile load(const std::filesystem::path& path);
};

class LiveBackend : public CompletionBackend {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit LiveBackend(ProviderProfile profile, std::shared_ptr<HttpTransport> transport = nullptr,
                       EnvLookup env = nullptr, Sleeper sleep = nullptr);

  // Errors: kAuthMissing, kRateLimited, kTimeout, kProvider.
  CompletionResponse complete(const CompletionRequest& req) override;

  std::string request_body(const CompletionRequest& req) const;

 private:
  ProviderProfile profile_;
  std::shared_ptr<HttpTransport> transport_;
  EnvLookup env_;
  Sleeper sleep_;
};

}  // namespace reify::llm
