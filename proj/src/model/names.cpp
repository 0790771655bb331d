#include "reify/model/names.hpp"

#include <cctype>

namespace reify::model {

namespace {

std::string collapse_spaces(std::string_view raw, bool lower) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(lower ? static_cast<char>(std::tolower(uc)) : c);
  }
  return out;
}

}  // namespace

std::string canonical_name(std::string_view raw) { return collapse_spaces(raw, true); }

std::string canonical_method_name(std::string_view raw) {
  std::string out = collapse_spaces(raw, false);
  while (out.size() >= 2 && out.ends_with("()")) {
    out.resize(out.size() - 2);
    while (!out.empty() && out.back() == ' ') out.pop_back();
  }
  return out;
}

}  // namespace reify::model
