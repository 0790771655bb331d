#include "reify/prompt/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace reify::prompt {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// -ie nouns whose plural is not -y + "ies"
constexpr std::array<std::string_view, 10> kIePlurals{"movies",  "cookies",  "calories", "selfies", "zombies",
                                                      "rookies", "hoodies",  "freebies", "ties",    "pies"};

// Splits at the first " of " that is not at the start: {"dates", " of birth"}.
std::pair<std::string, std::string> split_head(std::string_view phrase) {
  const auto pos = phrase.find(" of ");
  if (pos == std::string_view::npos || pos == 0) return {std::string(phrase), {}};
  return {std::string(phrase.substr(0, pos)), std::string(phrase.substr(pos))};
}

std::string map_last_word(std::string_view phrase, std::string (*fn)(std::string_view)) {
  auto [head, tail] = split_head(phrase);
  const auto space = head.rfind(' ');
  const std::size_t start = space == std::string::npos ? 0 : space + 1;
  return head.substr(0, start) + fn(std::string_view(head).substr(start)) + tail;
}

std::string last_head_word(std::string_view phrase) {
  auto head = split_head(phrase).first;
  const auto space = head.rfind(' ');
  return space == std::string::npos ? head : head.substr(space + 1);
}

bool strip_prefix(std::string& s, std::string_view prefix) {
  if (!s.starts_with(prefix)) return false;
  s.erase(0, prefix.size());
  return true;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string squash(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool is_plural_word(std::string_view word) {
  if (word.size() < 2 || word.back() != 's') return false;
  return !(word.ends_with("ss") || word.ends_with("us") || word.ends_with("is"));
}

std::string singularize(std::string_view word) {
  std::string w(word);
  if (!is_plural_word(w)) return w;
  if (w.ends_with("species") || w.ends_with("series")) return w;
  if (std::find(kIePlurals.begin(), kIePlurals.end(), w) != kIePlurals.end()) return w.substr(0, w.size() - 1);
  if (w.size() > 4 && w.ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view suffix : {"sses", "xes", "ches", "shes"}) {
    if (w.ends_with(suffix)) return w.substr(0, w.size() - 2);
  }
  return w.substr(0, w.size() - 1);
}

std::string pluralize(std::string_view word) {
  std::string w(word);
  if (w.empty()) return w;
  if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) return w.substr(0, w.size() - 1) + "ies";
  if (w.ends_with("s") || w.ends_with("x") || w.ends_with("ch") || w.ends_with("sh")) return w + "es";
  return w + "s";
}

std::string singularize_head(std::string_view phrase) { return map_last_word(phrase, singularize); }

std::string pluralize_head(std::string_view phrase) { return map_last_word(phrase, pluralize); }

bool head_is_plural(std::string_view phrase) { return is_plural_word(last_head_word(phrase)); }

std::string indefinite_article(std::string_view noun) {
  const std::string w = to_lower(trim(noun));
  if (w.empty()) return "a";
  for (std::string_view p : {"hour", "honest", "honor", "heir"}) {
    if (w.starts_with(p)) return "an";
  }
  for (std::string_view p : {"uni", "use", "usa", "usu", "uti", "ure", "eu", "one", "once"}) {
    if (w.starts_with(p)) return "a";
  }
  return is_vowel(w[0]) ? "an" : "a";
}

std::string with_article(std::string_view noun) { return indefinite_article(noun) + " " + std::string(noun); }

std::string normalize_name(std::string_view raw) {
  std::string s = squash(raw);
  while (!s.empty() && std::string_view(".,;:!?\"'`").find(s.back()) != std::string_view::npos) s.pop_back();
  while (!s.empty() && (s.front() == '"' || s.front() == '\'' || s.front() == '`')) s.erase(0, 1);
  s = trim(s);
  strip_prefix(s, "and ");
  // after "a"/"an" the noun is already singular
  bool singular = false;
  if (!strip_prefix(s, "a list of ")) {
    singular = strip_prefix(s, "an ") || strip_prefix(s, "a ");
    if (!singular) strip_prefix(s, "the ");
    if (strip_prefix(s, "list of ")) singular = false;
  }
  strip_prefix(s, "the ");
  s = trim(s);
  return singular ? s : singularize_head(s);
}

std::string strip_determiners(std::string_view phrase) {
  std::string s = squash(phrase);
  while (!s.empty() && std::string_view(".,;:!?\"'`").find(s.back()) != std::string_view::npos) s.pop_back();
  strip_prefix(s, "and ");
  for (std::string_view p : {"a list of ", "list of ", "an ", "a ", "the "}) {
    if (strip_prefix(s, p)) break;
  }
  return trim(s);
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string join_enumeration(const std::vector<std::string>& items) {
  if (items.size() <= 1) return join(items, "");
  if (items.size() == 2) return items[0] + " and " + items[1];
  std::vector<std::string> head(items.begin(), items.end() - 1);
  return join(head, ", ") + ", and " + items.back();
}

std::vector<std::string> split_enumeration(std::string_view text) {
  std::string s = trim(text);
  while (!s.empty() && (s.back() == '.' || s.back() == ',' || s.back() == ';')) s = trim(s.substr(0, s.size() - 1));
  std::vector<std::string> pieces;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    pieces.push_back(trim(std::string_view(s).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!pieces.empty()) {
    // "x and y" without a serial comma
    std::string last = pieces.back();
    const auto pos = to_lower(last).rfind(" and ");
    if (pos != std::string::npos && !to_lower(last).starts_with("and ")) {
      pieces.back() = trim(last.substr(0, pos));
      pieces.push_back(trim(last.substr(pos + 5)));
    }
  }
  std::vector<std::string> out;
  for (auto& p : pieces) {
    if (to_lower(p).starts_with("and ")) p = trim(p.substr(4));
    if (to_lower(p) == "and") continue;
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

}  // namespace reify::prompt
