#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "prompt/figures.hpp"
#include "reify/error.hpp"
#include "reify/llm/backend.hpp"

namespace reify::testing {

// Answers a prompt by its last "Q:" line, looked up in scripts under
// tests/fixtures/scripts. The shared ST6 question "What are the method names
// for these actions?" is keyed as "<question>|<object>" using the object of
// the preceding "What can a X do?" turn.
class ScriptedBackend : public llm::CompletionBackend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(const std::vector<std::string>& script_names) {
    for (const auto& n : script_names) load(n);
  }

  void load(const std::string& script_name) {
    const auto doc = nlohmann::json::parse(read_file(fixture_path("scripts/" + script_name + ".json")));
    for (const auto& [q, a] : doc.at("answers").items()) answers_[q] = a.get<std::string>();
  }

  static std::string script_prompt(const std::string& script_name) {
    return nlohmann::json::parse(read_file(fixture_path("scripts/" + script_name + ".json"))).at("prompt");
  }

  static std::vector<std::string> question_lines(const std::string& prompt) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < prompt.size()) {
      auto end = prompt.find('\n', start);
      if (end == std::string::npos) end = prompt.size();
      const auto line = prompt.substr(start, end - start);
      if (line.starts_with("Q: ")) out.push_back(line);
      start = end + 1;
    }
    return out;
  }

  static std::string key_for(const std::string& prompt) {
    const auto qs = question_lines(prompt);
    if (qs.empty()) return {};
    const auto& last = qs.back();
    if (last != "Q: What are the method names for these actions?") return last;
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
      for (std::string_view art : {"Q: What can a ", "Q: What can an "}) {
        if (it->starts_with(art) && it->ends_with(" do?")) {
          const auto subject = it->substr(art.size(), it->size() - art.size() - 4);
          if (subject != "student") return last + "|" + subject;
        }
      }
    }
    return last;
  }

  llm::CompletionResponse complete(const llm::CompletionRequest& req) override {
    ++calls_;
    const auto key = key_for(req.prompt);
    std::lock_guard lock(mu_);
    prompts_.push_back(req.prompt);
    auto it = answers_.find(key);
    if (it == answers_.end()) throw Error(ErrorCode::kReplayMiss, "no scripted answer for " + key);
    return llm::CompletionResponse{it->second, std::chrono::milliseconds(0), "scripted"};
  }

  std::size_t calls() const { return calls_.load(); }
  std::vector<std::string> prompts() const {
    std::lock_guard lock(mu_);
    return prompts_;
  }

 private:
  std::map<std::string, std::string> answers_;
  mutable std::mutex mu_;
  std::vector<std::string> prompts_;
  std::atomic<std::size_t> calls_{0};
};

// Records every request that reaches the wrapped backend.
class RecordingBackend : public llm::CompletionBackend {
 public:
  explicit RecordingBackend(std::shared_ptr<llm::CompletionBackend> inner) : inner_(std::move(inner)) {}

  llm::CompletionResponse complete(const llm::CompletionRequest& req) override {
    {
      std::lock_guard lock(mu_);
      requests_.push_back(req);
    }
    return inner_->complete(req);
  }

  std::vector<llm::CompletionRequest> take() {
    std::lock_guard lock(mu_);
    return std::exchange(requests_, {});
  }

 private:
  std::shared_ptr<llm::CompletionBackend> inner_;
  std::mutex mu_;
  std::vector<llm::CompletionRequest> requests_;
};

}  // namespace reify::testing
