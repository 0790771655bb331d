#include <signal.h>

#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "reify/error.hpp"
#include "reify/llm/live.hpp"
#include "reify/llm/replay.hpp"
#include "reify/session/http.hpp"

namespace {

std::filesystem::path store_dir(const std::string& manifest) {
  std::filesystem::path p(manifest);
  return p.filename() == "manifest.json" ? p.parent_path() : p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Session service for object model synthesis"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "sessions";
  std::string replay;
  bool record = false;
  std::string profile_path;
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to listen on; 0 picks a free one")->check(CLI::Range(0, 65535));
  app.add_option("--data-dir", data_dir, "Directory holding one subdirectory per session");
  app.add_option("--replay", replay, "Replay store manifest (or its directory); completions come only from it");
  app.add_flag("--record", record, "With --replay: ask the provider on a miss and add the answer to the store");
  app.add_option("--provider-profile", profile_path, "Provider profile JSON; the credential comes from its environment variable")
      ->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  try {
    if (record && replay.empty()) throw reify::Error(reify::ErrorCode::kInvalidArgument, "--record needs --replay <manifest>");
    std::shared_ptr<reify::llm::CompletionBackend> backend;
    std::shared_ptr<reify::llm::CompletionBackend> live;
    if (record || replay.empty()) {
      auto profile = profile_path.empty() ? reify::llm::ProviderProfile{} : reify::llm::ProviderProfile::load(profile_path);
      if (std::getenv(profile.credential_env.c_str()) == nullptr) {
        std::cerr << "warning: " << profile.credential_env << " is not set; synthesis will fail with AuthMissing\n";
      }
      live = std::make_shared<reify::llm::LiveBackend>(profile);
    }
    if (!replay.empty()) {
      const auto mode = record ? reify::llm::ReplayMode::kRecord : reify::llm::ReplayMode::kReplay;
      auto store = reify::llm::ReplayStore::open(store_dir(replay), mode, live);
      std::cerr << "replay store " << store_dir(replay).string() << ": " << store->size() << " entries, "
                << reify::llm::to_string(mode) << "\n";
      backend = store;
    } else {
      backend = live;
    }

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    reify::session::SessionOptions options;
    options.data_dir = data_dir;
    reify::session::SessionManager sessions(backend, options);
    reify::session::HttpService http(sessions);
    const int bound = http.bind(host, port);
    if (bound <= 0) throw reify::Error(reify::ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
    std::cout << "listening on " << host << ":" << bound << " with " << sessions.session_ids().size()
              << " recovered sessions" << std::endl;

    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      http.stop();
    });
    http.listen_after_bind();
    // wake the waiter if the server stopped on its own
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  } catch (const reify::Error& e) {
    std::cerr << "error: " << reify::to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
