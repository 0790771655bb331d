#include "reify/prompt/parse.hpp"

#include <cctype>
#include <set>

#include "reify/model/names.hpp"
#include "reify/prompt/text.hpp"

namespace reify::prompt {

using model::FieldType;
using model::Multiplicity;
using model::Primitive;

namespace {

// Text after the last "A:" answer marker, or all of it.
std::string answer_part(std::string_view completion) {
  const auto pos = completion.rfind("A:");
  if (pos == std::string_view::npos) return trim(completion);
  return trim(completion.substr(pos + 2));
}

std::string first_line(std::string_view s) {
  const auto t = trim(s);
  const auto nl = t.find('\n');
  return nl == std::string::npos ? t : trim(std::string_view(t).substr(0, nl));
}

// Cuts at the first sentence end: a period followed by whitespace.
std::string first_sentence(std::string_view s) {
  const auto line = first_line(s);
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] == '.' && std::isspace(static_cast<unsigned char>(line[i + 1]))) return line.substr(0, i + 1);
  }
  return line;
}

Diagnostic diag(DiagnosticCode code, std::string message) { return Diagnostic{code, std::move(message), {}}; }

std::string camel_case(std::string_view words) {
  std::string out;
  bool upper = false;
  for (char c : trim(words)) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc) || c == '_' || c == '-') {
      upper = !out.empty();
      continue;
    }
    if (!std::isalnum(uc)) continue;
    out.push_back(upper ? static_cast<char>(std::toupper(uc)) : c);
    upper = false;
  }
  return out;
}

std::optional<Primitive> primitive_word(const std::string& w) {
  if (auto p = model::parse_primitive(w)) return p;
  if (w == "integer") return Primitive::kInt;
  if (w == "date") return Primitive::kDatetime;
  return std::nullopt;
}

}  // namespace

Parsed<std::vector<std::string>> parse_name_list(std::string_view completion) {
  Parsed<std::vector<std::string>> out;
  const std::string lower = to_lower(completion);
  const auto marker = lower.rfind("following tables");
  if (marker == std::string::npos) {
    out.diagnostics.push_back(diag(DiagnosticCode::kNoListFound, "no table list in completion"));
    return out;
  }
  std::string_view rest = std::string_view(completion).substr(marker + std::string_view("following tables").size());
  const auto start = rest.find_first_not_of(" \t");
  if (start != std::string_view::npos && rest[start] == ':') rest = rest.substr(start + 1);
  std::set<std::string> seen;
  for (const auto& item : split_enumeration(first_line(rest))) {
    auto name = normalize_name(item);
    if (!name.empty() && seen.insert(name).second) out.value.push_back(std::move(name));
  }
  if (out.value.empty()) out.diagnostics.push_back(diag(DiagnosticCode::kEmptyList, "table list is empty"));
  return out;
}

Multiplicity infer_multiplicity(std::string_view raw) {
  std::string s = squash(raw);
  while (!s.empty() && std::ispunct(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.starts_with("and ")) s.erase(0, 4);
  bool article = false;
  for (std::string_view a : {"a ", "an "}) {
    if (s.starts_with(a)) {
      s.erase(0, a.size());
      article = true;
      break;
    }
  }
  if (s.starts_with("list of ")) return Multiplicity::kMany;
  if (article) return Multiplicity::kOne;
  if (s.starts_with("the ")) s.erase(0, 4);
  if (s.starts_with("list of ")) return Multiplicity::kMany;
  return head_is_plural(s) ? Multiplicity::kMany : Multiplicity::kOne;
}

Parsed<std::vector<FieldPhrase>> parse_field_phrases(std::string_view completion) {
  Parsed<std::vector<FieldPhrase>> out;
  const std::string answer = answer_part(completion);
  const std::string lower = to_lower(answer);
  std::size_t best = std::string::npos;
  std::size_t len = 0;
  for (std::string_view m : {" has ", " have ", " has:", " have:"}) {
    const auto pos = lower.find(m);
    if (pos != std::string::npos && pos < best) {
      best = pos;
      len = m.size();
    }
  }
  if (best == std::string::npos) {
    out.diagnostics.push_back(diag(DiagnosticCode::kNoListFound, "no field enumeration in completion"));
    return out;
  }
  std::set<std::string> seen;
  for (const auto& item : split_enumeration(first_sentence(std::string_view(answer).substr(best + len)))) {
    FieldPhrase p;
    p.raw = item;
    p.name = normalize_name(item);
    p.multiplicity = infer_multiplicity(item);
    if (p.name.empty() || !seen.insert(p.name).second) continue;
    out.value.push_back(std::move(p));
  }
  if (out.value.empty()) out.diagnostics.push_back(diag(DiagnosticCode::kEmptyList, "field enumeration is empty"));
  return out;
}

Parsed<FieldType> parse_type_answer(std::string_view completion, const std::vector<std::string>& vocabulary) {
  Parsed<FieldType> out{FieldType::primitive(Primitive::kString), {}};
  std::string a = squash(first_line(answer_part(completion)));
  while (!a.empty() && std::string_view(".,;:!?\"'`").find(a.back()) != std::string_view::npos) a.pop_back();
  while (!a.empty() && (a.front() == '"' || a.front() == '\'' || a.front() == '`')) a.erase(0, 1);
  // List[x] and "a list of x" name the element type; multiplicity is decided elsewhere
  if (a.starts_with("list[") && a.ends_with("]")) a = a.substr(5, a.size() - 6);
  for (std::string_view p : {"a list of ", "list of ", "an ", "a "}) {
    if (a.starts_with(p)) {
      a.erase(0, p.size());
      break;
    }
  }
  a = trim(a);
  if (auto p = primitive_word(a)) {
    out.value = FieldType::primitive(*p);
    return out;
  }
  for (const auto& candidate : {a, singularize_head(a)}) {
    for (const auto& v : vocabulary) {
      const auto cv = model::canonical_name(v);
      if (cv != candidate) continue;
      if (auto p = primitive_word(cv)) {
        out.value = FieldType::primitive(*p);
      } else {
        out.value = FieldType::object_ref(v);
      }
      return out;
    }
  }
  out.diagnostics.push_back(diag(DiagnosticCode::kLowConfidence, "type answer '" + a + "' is not in the vocabulary"));
  return out;
}

Parsed<std::vector<std::string>> parse_method_names(std::string_view completion) {
  Parsed<std::vector<std::string>> out;
  std::string answer = answer_part(completion);
  const std::string lower = to_lower(answer);
  const auto marker = lower.rfind("method names are");
  if (marker != std::string::npos) {
    answer = answer.substr(marker + std::string_view("method names are").size());
    const auto colon = answer.find_first_not_of(" \t");
    if (colon != std::string::npos && answer[colon] == ':') answer = answer.substr(colon + 1);
  }
  std::set<std::string> seen;
  for (auto item : split_enumeration(first_line(answer))) {
    if (const auto paren = item.find('('); paren != std::string::npos) item = item.substr(0, paren);
    auto name = camel_case(model::canonical_method_name(item));
    if (name.empty() || !seen.insert(to_lower(name)).second) continue;
    out.value.push_back(std::move(name));
  }
  if (out.value.empty()) out.diagnostics.push_back(diag(DiagnosticCode::kEmptyList, "method list is empty"));
  return out;
}

}  // namespace reify::prompt
