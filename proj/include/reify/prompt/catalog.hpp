#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reify::prompt {

enum class SubtaskKind {
  kST1_Initial,
  kST1_Followup,
  kST2_MoreObjects,
  kST3_Fields,
  kST4_Type,
  kST6_Methods,
  kST7_MoreFields,
  kST8_MoreMethods,
};

inline constexpr std::array kAllSubtaskKinds{
    SubtaskKind::kST1_Initial,     SubtaskKind::kST1_Followup, SubtaskKind::kST2_MoreObjects,
    SubtaskKind::kST3_Fields,      SubtaskKind::kST4_Type,     SubtaskKind::kST6_Methods,
    SubtaskKind::kST7_MoreFields,  SubtaskKind::kST8_MoreMethods,
};

// "ST1_Initial", "ST4_Type", ...
std::string_view to_string(SubtaskKind kind);
std::optional<SubtaskKind> parse_subtask_kind(std::string_view text);

struct TemplateSpec {
  SubtaskKind kind;
  std::string file;
  // context fields that must be present, by wire name ("objectName")
  std::vector<std::string> required;
  // one entry per turn; each ends with exactly one newline
  std::vector<std::string> sections;
  std::string turn_separator = "\n\n";
  // the single section is appended to the prior transcript
  bool continuation = false;
  // later turns beyond the last section reuse it
  bool repeat_last_turn = false;
  std::vector<std::string> stop_sequences;
};

class Catalog {
 public:
  // `files` maps file name to content and must contain manifest.json.
  static Catalog from_files(const std::map<std::string, std::string>& files);
  static Catalog load_directory(const std::filesystem::path& dir);

  const TemplateSpec& spec(SubtaskKind kind) const;
  const std::string& version() const { return version_; }

 private:
  std::string version_;
  std::map<SubtaskKind, TemplateSpec> specs_;
};

// The catalog compiled into the library.
const Catalog& default_catalog();

}  // namespace reify::prompt
