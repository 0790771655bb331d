#include "reify/analysis/analysis.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "reify/error.hpp"
#include "reify/model/codec.hpp"
#include "reify/model/names.hpp"
#include "reify/model/ops.hpp"

namespace reify::analysis {

namespace fs = std::filesystem;
using session::SessionEvent;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> sorted_subdirs(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t Corpus::size() const {
  std::size_t n = 0;
  for (const auto& [_, sessions] : groups) n += sessions.size();
  return n;
}

SessionRecord load_session(const fs::path& dir) {
  SessionRecord r;
  r.id = dir.filename().string();
  try {
    r.model = model::decode_model(read_text(dir / "model.json"));
    r.events = session::decode_log(read_text(dir / "events.jsonl"));
  } catch (const Error& e) {
    throw Error(e.code(), r.id + ": " + e.what());
  }
  const auto replayed = session::replay_log(r.events);
  if (!(replayed == r.model)) throw Error(ErrorCode::kInconsistent, r.id + ": log does not replay to model.json");
  return r;
}

Corpus Corpus::load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "no corpus directory " + dir.string());
  Corpus c;
  for (const auto& group : sorted_subdirs(dir)) {
    auto& sessions = c.groups[group.filename().string()];
    for (const auto& s : sorted_subdirs(group)) sessions.push_back(load_session(s));
  }
  return c;
}

namespace {

std::set<std::string> names_in(const model::ObjectModel& m, FrequencyKind kind) {
  std::set<std::string> out;
  for (const auto& obj : m.objects) {
    if (obj.deleted) continue;
    const auto object = model::canonical_name(obj.name);
    if (kind == FrequencyKind::kObjects) {
      out.insert(object);
      continue;
    }
    for (const auto& f : obj.fields) {
      if (!f.deleted) out.insert(object + "." + model::canonical_name(f.name));
    }
  }
  return out;
}

}  // namespace

FrequencyTable frequency_table(const Corpus& corpus, FrequencyKind kind, double threshold) {
  if (corpus.size() == 0) throw Error(ErrorCode::kEmptyCorpus, "corpus has no sessions");
  FrequencyTable t;
  std::map<std::string, FrequencyRow> rows;
  for (const auto& [group, sessions] : corpus.groups) {
    t.groups.push_back(group);
    t.models[group] = sessions.size();
    for (const auto& s : sessions) {
      for (const auto& name : names_in(s.model, kind)) ++rows[name].count[group];
    }
  }
  for (auto& [name, row] : rows) {
    row.name = name;
    for (const auto& group : t.groups) {
      const auto n = t.models[group];
      const auto c = row.count[group];
      row.fraction[group] = n == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(n);
      if (!row.quadrant.empty()) row.quadrant += "/";
      row.quadrant += row.fraction[group] >= threshold ? "high" : "low";
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<ProgressPoint> progress_series(const std::vector<SessionEvent>& log, bool verify) {
  std::vector<ProgressPoint> out;
  for (const auto& e : log) out.push_back({e.t, e.component_count_after});
  if (verify && !log.empty() && log.front().action == session::kCreateAction) {
    const auto counts = session::replay_counts(log);
    for (std::size_t i = 0; i < log.size(); ++i) {
      if (counts[i] != out[i].count) {
        throw Error(ErrorCode::kInconsistent, "event " + std::to_string(log[i].seq) + " logs " +
                                                  std::to_string(out[i].count) + " components, replay gives " +
                                                  std::to_string(counts[i]));
      }
    }
  }
  return out;
}

std::optional<double> Retention::fraction() const {
  if (synthesized == 0) return std::nullopt;
  return static_cast<double>(retained) / static_cast<double>(synthesized);
}

RetentionStats retention_stats(const std::vector<SessionEvent>& log, const model::ObjectModel& final_model) {
  using model::ComponentPath;
  RetentionStats out;
  for (const auto& e : log) {
    if (!e.effect.is_object() || !e.effect.contains("added")) continue;
    for (const auto& a : e.effect["added"]) {
      if (a.value("provenance", "") != "synthesized") continue;
      const model::ObjectId o{a.at("object").get<std::size_t>()};
      ComponentPath p = ComponentPath::of(o);
      Retention* bucket = &out.objects;
      if (a.contains("field")) {
        p = ComponentPath::of(o, model::FieldId{a["field"].get<std::size_t>()});
        bucket = &out.fields;
      } else if (a.contains("method")) {
        p = ComponentPath::of(o, model::MethodId{a["method"].get<std::size_t>()});
        bucket = &out.methods;
      }
      ++bucket->synthesized;
      if (!model::path_exists(final_model, p) || !model::is_active(final_model, p)) continue;
      const auto& obj = final_model.objects[o.index];
      const auto prov = p.field ? obj.fields[p.field->index].provenance
                        : p.method ? obj.methods[p.method->index].provenance
                                   : obj.provenance;
      if (prov == model::Provenance::kSynthesized) ++bucket->retained;
    }
  }
  return out;
}

std::optional<std::int64_t> session_duration_ms(const std::vector<SessionEvent>& log) {
  std::optional<std::int64_t> begin, finish;
  for (const auto& e : log) {
    if (e.action == "begin" && !begin) begin = e.t;
    if (e.action == session::kFinishAction) finish = e.t;
  }
  if (!begin || !finish) return std::nullopt;
  return *finish - *begin;
}

MeanSd mean_sd(const std::vector<double>& values, Deviation deviation) {
  MeanSd out;
  if (values.empty()) return out;
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  const auto denom = deviation == Deviation::kSample ? values.size() - 1 : values.size();
  if (denom == 0) return out;
  double sq = 0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(sq / static_cast<double>(denom));
  return out;
}

std::map<std::string, DurationStats> duration_stats(const Corpus& corpus, Deviation deviation) {
  if (corpus.size() == 0) throw Error(ErrorCode::kEmptyCorpus, "corpus has no sessions");
  std::map<std::string, DurationStats> out;
  for (const auto& [group, sessions] : corpus.groups) {
    auto& st = out[group];
    std::vector<double> minutes;
    for (const auto& s : sessions) {
      if (auto d = session_duration_ms(s.events)) {
        minutes.push_back(static_cast<double>(*d) / 60000.0);
      } else {
        ++st.excluded;
      }
    }
    st.sessions = minutes.size();
    const auto ms = mean_sd(minutes, deviation);
    st.mean_minutes = ms.mean;
    st.sd_minutes = ms.sd;
  }
  return out;
}

}  // namespace reify::analysis
