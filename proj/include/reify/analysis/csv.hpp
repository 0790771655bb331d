#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "reify/analysis/analysis.hpp"

namespace reify::analysis {

// RFC 4180 quoting where needed.
std::string csv_cell(const std::string& text);
std::string csv_number(double value);

void write_frequency_csv(std::ostream& out, const FrequencyTable& table, FrequencyKind kind);
void write_progress_csv(std::ostream& out, const std::vector<ProgressPoint>& series);
void write_retention_csv(std::ostream& out, const RetentionStats& stats);
void write_duration_csv(std::ostream& out, const std::map<std::string, DurationStats>& stats);

}  // namespace reify::analysis
