#include "reify/session/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "reify/error.hpp"
#include "reify/model/codec.hpp"
#include "reify/model/ops.hpp"

namespace reify::session {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_error(const std::string& what) {
  throw Error(ErrorCode::kIo, what + ": " + std::strerror(errno));
}

int open_append(const fs::path& path) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) io_error("cannot open " + path.string());
  return fd;
}

void write_fd(int fd, std::string_view bytes, const std::string& what) {
  while (!bytes.empty()) {
    const auto n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("cannot write " + what);
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

void sync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Keeps the newline-terminated prefix of a JSON Lines file.
std::size_t drop_torn_tail(const fs::path& path, std::string& text) {
  const auto cut = text.rfind('\n');
  const std::size_t keep = cut == std::string::npos ? 0 : cut + 1;
  const std::size_t dropped = text.size() - keep;
  if (dropped > 0) {
    text.resize(keep);
    fs::resize_file(path, keep);
  }
  return dropped;
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view bytes, bool sync, const FaultHook& hook) {
  const fs::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_error("cannot create " + tmp.string());
  try {
    write_fd(fd, bytes, tmp.string());
    if (sync && ::fdatasync(fd) != 0) io_error("cannot sync " + tmp.string());
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  if (hook) hook("before-rename");
  if (::rename(tmp.c_str(), path.c_str()) != 0) io_error("cannot rename " + tmp.string());
  if (sync) sync_dir(path.parent_path());
}

SessionStore::SessionStore(fs::path dir, bool sync, FaultHook hook)
    : dir_(std::move(dir)), sync_(sync), hook_(std::move(hook)) {
  fs::create_directories(dir_);
  log_fd_ = open_append(dir_ / "events.jsonl");
  exchange_fd_ = open_append(dir_ / "exchanges.jsonl");
}

SessionStore::~SessionStore() {
  if (log_fd_ >= 0) ::close(log_fd_);
  if (exchange_fd_ >= 0) ::close(exchange_fd_);
}

void SessionStore::write_all(int fd, std::string_view bytes, bool split) {
  if (split && hook_ && bytes.size() > 1) {
    write_fd(fd, bytes.substr(0, bytes.size() / 2), dir_.string());
    hook_("mid-append");
    bytes.remove_prefix(bytes.size() / 2);
  }
  write_fd(fd, bytes, dir_.string());
  if (sync_ && ::fdatasync(fd) != 0) io_error("cannot sync " + dir_.string());
}

void SessionStore::append_event(const SessionEvent& event) {
  if (hook_) hook_("before-append");
  write_all(log_fd_, encode_event_line(event), true);
  if (hook_) hook_("after-append");
}

void SessionStore::append_exchanges(std::uint64_t seq, const std::vector<prompt::PromptExchange>& exchanges) {
  if (exchanges.empty()) return;
  std::string lines;
  for (const auto& e : exchanges) {
    nlohmann::ordered_json doc{{"seq", seq}};
    doc.update(prompt::encode_exchange(e));
    lines += doc.dump() + "\n";
  }
  write_all(exchange_fd_, lines, false);
}

void SessionStore::write_snapshot(std::uint64_t seq, const model::ObjectModel& model) {
  nlohmann::ordered_json doc{{"seq", seq}, {"model", model::encode_model(model)}};
  write_file_atomic(dir_ / "snapshot.json", doc.dump() + "\n", sync_, hook_);
}

void SessionStore::write_final_model(const std::string& document) {
  write_file_atomic(dir_ / "model.json", document, sync_);
}

std::optional<SessionStore::Recovered> SessionStore::recover(const fs::path& dir) {
  const auto log_path = dir / "events.jsonl";
  if (!fs::exists(log_path)) return std::nullopt;
  Recovered out;
  std::string text = read_all(log_path);
  out.truncated_bytes = drop_torn_tail(log_path, text);
  out.events = decode_log(text);
  if (out.events.empty() || out.events.front().action != kCreateAction) return std::nullopt;
  if (const auto ex_path = dir / "exchanges.jsonl"; fs::exists(ex_path)) {
    // exchanges are written before their event; drop those whose event never committed
    std::string ex = read_all(ex_path);
    drop_torn_tail(ex_path, ex);
    std::string kept;
    std::istringstream lines(ex);
    for (std::string line; std::getline(lines, line);) {
      const auto doc = nlohmann::json::parse(line, nullptr, false);
      if (!doc.is_discarded() && doc.value("seq", out.events.size()) < out.events.size()) kept += line + "\n";
    }
    if (kept != ex) write_file_atomic(ex_path, kept, false);
  }

  // a snapshot at or beyond the end of the log cannot be trusted
  std::optional<model::ObjectModel> base;
  if (fs::exists(dir / "snapshot.json")) {
    try {
      const auto doc = nlohmann::json::parse(read_all(dir / "snapshot.json"));
      const auto seq = doc.at("seq").get<std::uint64_t>();
      if (seq < out.events.size()) {
        base = model::decode_model_json(doc.at("model"));
        out.snapshot_seq = seq;
      }
    } catch (const std::exception&) {
      base.reset();
    }
  }
  if (!base) {
    out.model = replay_log(out.events);
    return out;
  }
  out.model = std::move(*base);
  for (std::size_t i = *out.snapshot_seq + 1; i < out.events.size(); ++i) {
    const auto& e = out.events[i];
    if (e.seq != i) throw Error(ErrorCode::kInconsistent, "event " + std::to_string(i) + " has seq " + std::to_string(e.seq));
    apply_event(out.model, e);
    if (model::component_count(out.model) != e.component_count_after) {
      throw Error(ErrorCode::kInconsistent, "event " + std::to_string(i) + " count differs from recovery");
    }
  }
  return out;
}

}  // namespace reify::session
