#include "reify/llm/replay.hpp"

#include <fstream>
#include <sstream>

#include "reify/error.hpp"

namespace reify::llm {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot replace " + path.string() + ": " + ec.message());
}

std::string label_for(const CompletionRequest& req) {
  // last line of the prompt, usually the question
  std::string p = req.prompt;
  while (!p.empty() && p.back() == '\n') p.pop_back();
  const auto nl = p.rfind('\n');
  return nl == std::string::npos ? p : p.substr(nl + 1);
}

}  // namespace

std::string_view to_string(ReplayMode mode) {
  switch (mode) {
    case ReplayMode::kRecord: return "record";
    case ReplayMode::kReplay: return "replay";
    case ReplayMode::kPassthrough: return "passthrough";
  }
  return "replay";
}

std::optional<ReplayMode> parse_replay_mode(std::string_view text) {
  if (text == "record") return ReplayMode::kRecord;
  if (text == "replay") return ReplayMode::kReplay;
  if (text == "passthrough") return ReplayMode::kPassthrough;
  return std::nullopt;
}

ReplayStore::ReplayStore(ReplayMode mode, std::shared_ptr<CompletionBackend> upstream, std::optional<fs::path> dir)
    : mode_(mode), upstream_(std::move(upstream)), dir_(std::move(dir)) {}

std::shared_ptr<ReplayStore> ReplayStore::open(const fs::path& dir, ReplayMode mode,
                                               std::shared_ptr<CompletionBackend> upstream) {
  auto store = std::make_shared<ReplayStore>(mode, std::move(upstream), dir);
  const auto manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) return store;
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text(manifest_path));
    for (const auto& e : manifest.at("entries")) {
      const auto digest = e.at("digest").get<std::string>();
      store->entries_[digest] = read_text(dir / (digest + ".txt"));
      store->labels_[digest] = e.value("label", std::string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDecode, "replay manifest " + manifest_path.string() + ": " + e.what());
  }
  return store;
}

CompletionResponse ReplayStore::complete(const CompletionRequest& req) {
  validate_request(req);
  const auto digest = request_digest(req);
  if (mode_ != ReplayMode::kPassthrough) {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(digest); it != entries_.end()) {
      return CompletionResponse{it->second, std::chrono::milliseconds(0), "replay"};
    }
    if (mode_ == ReplayMode::kReplay) throw Error(ErrorCode::kReplayMiss, digest);
  }
  if (!upstream_) throw Error(ErrorCode::kReplayMiss, digest + " (no upstream backend)");
  // Record mode holds the lock across the call so concurrent identical
  // requests reach upstream once.
  std::unique_lock lock(mu_, std::defer_lock);
  if (mode_ == ReplayMode::kRecord) {
    lock.lock();
    if (auto it = entries_.find(digest); it != entries_.end()) {
      return CompletionResponse{it->second, std::chrono::milliseconds(0), "replay"};
    }
  }
  auto response = upstream_->complete(req);
  if (mode_ == ReplayMode::kRecord) {
    ++upstream_calls_;
    entries_[digest] = response.text;
    labels_[digest] = label_for(req);
    if (dir_) save_locked();
  } else {
    std::lock_guard count_lock(mu_);
    ++upstream_calls_;
  }
  return response;
}

std::size_t ReplayStore::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

bool ReplayStore::contains(const std::string& digest) const {
  std::lock_guard lock(mu_);
  return entries_.contains(digest);
}

std::map<std::string, std::string> ReplayStore::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

void ReplayStore::insert(const CompletionRequest& req, std::string text) {
  std::lock_guard lock(mu_);
  const auto digest = request_digest(req);
  entries_[digest] = std::move(text);
  labels_[digest] = label_for(req);
}

std::size_t ReplayStore::upstream_calls() const {
  std::lock_guard lock(mu_);
  return upstream_calls_;
}

void ReplayStore::save() const {
  std::lock_guard lock(mu_);
  save_locked();
}

void ReplayStore::save_locked() const {
  if (!dir_) throw Error(ErrorCode::kIo, "replay store has no directory");
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir_->string() + ": " + ec.message());
  nlohmann::ordered_json manifest;
  manifest["version"] = 1;
  manifest["digestScheme"] = "sha256:reify-completion-v1";
  auto list = nlohmann::ordered_json::array();
  for (const auto& [digest, text] : entries_) {
    const auto path = *dir_ / (digest + ".txt");
    if (!fs::exists(path) || read_text(path) != text) write_text(path, text);
    auto label = labels_.find(digest);
    list.push_back({{"digest", digest}, {"label", label == labels_.end() ? std::string() : label->second}});
  }
  manifest["entries"] = std::move(list);
  write_text(*dir_ / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace reify::llm
