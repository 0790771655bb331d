#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reify/analysis/csv.hpp"
#include "reify/error.hpp"

using namespace reify::analysis;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw reify::Error(reify::ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metrics over exported sessions"};
  app.require_subcommand(1);
  std::string out_format = "csv";

  auto* freq = app.add_subcommand("freq", "How often each object or field occurs per group");
  std::string corpus_dir;
  std::string kind = "objects";
  double threshold = 0.5;
  freq->add_option("--corpus", corpus_dir, "Corpus directory <group>/<session>/...")->required();
  freq->add_option("--kind", kind, "objects or fields")->check(CLI::IsMember({"objects", "fields"}));
  freq->add_option("--threshold", threshold, "Quadrant cutoff on each axis")->check(CLI::Range(0.0, 1.0));
  freq->add_option("--out", out_format, "Output format")->check(CLI::IsMember({"csv"}));

  auto* progress = app.add_subcommand("progress", "Component count after each event");
  std::string log_path;
  bool no_verify = false;
  progress->add_option("--log", log_path, "events.jsonl")->required()->check(CLI::ExistingFile);
  progress->add_flag("--no-verify", no_verify, "Skip the replay cross-check");
  progress->add_option("--out", out_format, "Output format")->check(CLI::IsMember({"csv"}));

  auto* retention = app.add_subcommand("retention", "Share of synthesized components kept");
  std::string session_dir;
  retention->add_option("--session", session_dir, "Session directory with model.json and events.jsonl")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* duration = app.add_subcommand("duration", "Time from begin to finish per group");
  std::string sd = "population";
  duration->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  duration->add_option("--sd", sd, "population or sample standard deviation")
      ->check(CLI::IsMember({"population", "sample"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (freq->parsed()) {
      const auto k = kind == "fields" ? FrequencyKind::kFields : FrequencyKind::kObjects;
      write_frequency_csv(std::cout, frequency_table(Corpus::load(corpus_dir), k, threshold), k);
    } else if (progress->parsed()) {
      write_progress_csv(std::cout, progress_series(reify::session::decode_log(read_text(log_path)), !no_verify));
    } else if (retention->parsed()) {
      const auto s = load_session(session_dir);
      write_retention_csv(std::cout, retention_stats(s.events, s.model));
    } else if (duration->parsed()) {
      write_duration_csv(std::cout, duration_stats(Corpus::load(corpus_dir),
                                                   sd == "sample" ? Deviation::kSample : Deviation::kPopulation));
    }
  } catch (const reify::Error& e) {
    std::cerr << "error: " << reify::to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
