#include "reify/analysis/csv.hpp"

#include <cstdio>

namespace reify::analysis {

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void write_frequency_csv(std::ostream& out, const FrequencyTable& table, FrequencyKind kind) {
  out << (kind == FrequencyKind::kObjects ? "object" : "field");
  for (const auto& g : table.groups) out << "," << csv_cell(g + "_count") << "," << csv_cell(g + "_fraction");
  out << ",quadrant\n";
  for (const auto& row : table.rows) {
    out << csv_cell(row.name);
    for (const auto& g : table.groups) out << "," << row.count.at(g) << "," << csv_number(row.fraction.at(g));
    out << "," << row.quadrant << "\n";
  }
}

void write_progress_csv(std::ostream& out, const std::vector<ProgressPoint>& series) {
  out << "t_ms,component_count\n";
  for (const auto& p : series) out << p.t << "," << p.count << "\n";
}

void write_retention_csv(std::ostream& out, const RetentionStats& stats) {
  out << "kind,synthesized,retained,fraction\n";
  auto row = [&out](const char* kind, const Retention& r) {
    out << kind << "," << r.synthesized << "," << r.retained << ",";
    if (auto f = r.fraction()) out << csv_number(*f);
    out << "\n";
  };
  row("objects", stats.objects);
  row("fields", stats.fields);
  row("methods", stats.methods);
}

void write_duration_csv(std::ostream& out, const std::map<std::string, DurationStats>& stats) {
  out << "group,sessions,excluded,mean_minutes,sd_minutes\n";
  for (const auto& [g, s] : stats) {
    out << csv_cell(g) << "," << s.sessions << "," << s.excluded << "," << csv_number(s.mean_minutes) << ","
        << csv_number(s.sd_minutes) << "\n";
  }
}

}  // namespace reify::analysis
