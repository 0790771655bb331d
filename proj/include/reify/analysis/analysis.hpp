#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reify/model/object_model.hpp"
#include "reify/session/events.hpp"

namespace reify::analysis {

struct SessionRecord {
  std::string id;
  model::ObjectModel model;
  std::vector<session::SessionEvent> events;
};

// Groups keyed by label, e.g. one per study arm.
struct Corpus {
  std::map<std::string, std::vector<SessionRecord>> groups;

  std::size_t size() const;
  // Layout: <dir>/<group>/<session-id>/{model.json, events.jsonl}. Every
  // log must replay to its model document.
  static Corpus load(const std::filesystem::path& dir);
};

SessionRecord load_session(const std::filesystem::path& dir);

enum class FrequencyKind { kObjects, kFields };

struct FrequencyRow {
  // object name, or "object.field"
  std::string name;
  std::map<std::string, std::size_t> count;
  std::map<std::string, double> fraction;
  // "high" or "low" per group in group order, joined by '/'
  std::string quadrant;
};

struct FrequencyTable {
  std::vector<std::string> groups;
  std::map<std::string, std::size_t> models;
  // sorted by name
  std::vector<FrequencyRow> rows;
};

// Fraction of each group's models whose active components include the name.
// Errors: kEmptyCorpus.
FrequencyTable frequency_table(const Corpus& corpus, FrequencyKind kind, double threshold = 0.5);

struct ProgressPoint {
  std::int64_t t = 0;
  std::size_t count = 0;
  friend bool operator==(const ProgressPoint&, const ProgressPoint&) = default;
};

// One point per event. With verify, the logged counts must agree with a
// replay of the log (kInconsistent otherwise); logs that do not start with
// createSession cannot be replayed and are taken as logged.
std::vector<ProgressPoint> progress_series(const std::vector<session::SessionEvent>& log, bool verify = true);

struct Retention {
  std::size_t synthesized = 0;
  std::size_t retained = 0;
  // absent when nothing was synthesized
  std::optional<double> fraction() const;
};

struct RetentionStats {
  Retention objects;
  Retention fields;
  Retention methods;
};

// Synthesized components added by the log that are still active in the
// final model with synthesized provenance.
RetentionStats retention_stats(const std::vector<session::SessionEvent>& log, const model::ObjectModel& final_model);

enum class Deviation { kPopulation, kSample };

struct DurationStats {
  std::size_t sessions = 0;
  // sessions without both begin and finish
  std::size_t excluded = 0;
  double mean_minutes = 0;
  double sd_minutes = 0;
};

// Duration is finish time minus begin time. Errors: kEmptyCorpus.
std::optional<std::int64_t> session_duration_ms(const std::vector<session::SessionEvent>& log);
std::map<std::string, DurationStats> duration_stats(const Corpus& corpus, Deviation deviation = Deviation::kPopulation);

struct MeanSd {
  double mean = 0;
  double sd = 0;
};
MeanSd mean_sd(const std::vector<double>& values, Deviation deviation);

}  // namespace reify::analysis
