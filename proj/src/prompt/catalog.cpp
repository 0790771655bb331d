#include "reify/prompt/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "reify/error.hpp"
#include "reify/prompt/text.hpp"

namespace reify::prompt {

namespace detail {
const std::map<std::string, std::string>& embedded_catalog_files();
}

namespace {

constexpr std::array<std::pair<SubtaskKind, std::string_view>, 8> kKindNames{{
    {SubtaskKind::kST1_Initial, "ST1_Initial"},
    {SubtaskKind::kST1_Followup, "ST1_Followup"},
    {SubtaskKind::kST2_MoreObjects, "ST2_MoreObjects"},
    {SubtaskKind::kST3_Fields, "ST3_Fields"},
    {SubtaskKind::kST4_Type, "ST4_Type"},
    {SubtaskKind::kST6_Methods, "ST6_Methods"},
    {SubtaskKind::kST7_MoreFields, "ST7_MoreFields"},
    {SubtaskKind::kST8_MoreMethods, "ST8_MoreMethods"},
}};

const std::set<std::string> kContextFields{"userPrompt",  "objectNames",    "objectName",         "fieldPhrases",
                                           "methodNames", "typeVocabulary", "fieldName",          "objectDescriptions",
                                           "priorExchange"};

const std::set<std::string> kSlots{"userPrompt",     "appDescription", "objectName", "articleObject",
                                   "typeVocabulary", "fieldName",      "methodList", "fieldList"};

[[noreturn]] void catalog_error(const std::string& what) { throw Error(ErrorCode::kCatalog, what); }

std::string rstrip_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::vector<std::string> split_sections(const std::string& content, const std::string& marker) {
  std::vector<std::string> sections;
  std::string current;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!marker.empty() && trim(line) == marker) {
      sections.push_back(rstrip_newlines(current) + "\n");
      current.clear();
      continue;
    }
    current += line;
    current += '\n';
  }
  sections.push_back(rstrip_newlines(current) + "\n");
  return sections;
}

void check_slots(const std::string& file, const std::string& section) {
  std::size_t pos = 0;
  while ((pos = section.find("{{", pos)) != std::string::npos) {
    const auto end = section.find("}}", pos);
    if (end == std::string::npos) catalog_error(file + ": unterminated slot");
    const auto name = section.substr(pos + 2, end - pos - 2);
    if (!kSlots.contains(name)) catalog_error(file + ": unknown slot {{" + name + "}}");
    pos = end + 2;
  }
}

}  // namespace

std::string_view to_string(SubtaskKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<SubtaskKind> parse_subtask_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

Catalog Catalog::from_files(const std::map<std::string, std::string>& files) {
  auto manifest_it = files.find("manifest.json");
  if (manifest_it == files.end()) catalog_error("manifest.json missing");
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_it->second);
  } catch (const nlohmann::json::exception& e) {
    catalog_error(std::string("manifest.json: ") + e.what());
  }

  Catalog catalog;
  try {
    catalog.version_ = manifest.at("version").get<std::string>();
    const std::string marker = manifest.value("turnMarker", std::string());
    for (const auto& entry : manifest.at("kinds")) {
      const auto kind_name = entry.at("kind").get<std::string>();
      auto kind = parse_subtask_kind(kind_name);
      if (!kind) catalog_error("unknown kind " + kind_name);
      if (catalog.specs_.contains(*kind)) catalog_error("duplicate kind " + kind_name);
      TemplateSpec spec;
      spec.kind = *kind;
      spec.file = entry.at("file").get<std::string>();
      spec.required = entry.value("requires", std::vector<std::string>{});
      for (const auto& r : spec.required) {
        if (!kContextFields.contains(r)) catalog_error(kind_name + ": unknown context field " + r);
      }
      spec.turn_separator = entry.value("turnSeparator", std::string("\n\n"));
      spec.continuation = entry.value("continuation", false);
      spec.repeat_last_turn = entry.value("repeatLastTurn", false);
      spec.stop_sequences = entry.value("stop", std::vector<std::string>{});
      auto file_it = files.find(spec.file);
      if (file_it == files.end()) catalog_error(kind_name + ": template file " + spec.file + " missing");
      spec.sections = split_sections(file_it->second, marker);
      for (const auto& s : spec.sections) check_slots(spec.file, s);
      if (spec.continuation && spec.sections.size() != 1) catalog_error(kind_name + ": continuation needs one section");
      catalog.specs_.emplace(*kind, std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    catalog_error(std::string("manifest.json: ") + e.what());
  }
  for (auto kind : kAllSubtaskKinds) {
    if (!catalog.specs_.contains(kind)) catalog_error("no template for " + std::string(to_string(kind)));
  }
  return catalog;
}

Catalog Catalog::load_directory(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream content;
    content << in.rdbuf();
    files.emplace(entry.path().filename().string(), content.str());
  }
  if (ec) catalog_error("cannot read " + dir.string() + ": " + ec.message());
  return from_files(files);
}

const TemplateSpec& Catalog::spec(SubtaskKind kind) const {
  auto it = specs_.find(kind);
  if (it == specs_.end()) catalog_error("no template for " + std::string(to_string(kind)));
  return it->second;
}

const Catalog& default_catalog() {
  static const Catalog catalog = Catalog::from_files(detail::embedded_catalog_files());
  return catalog;
}

}  // namespace reify::prompt
