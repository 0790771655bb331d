#include "reify/prompt/describe.hpp"

#include <cctype>
#include <set>

#include "reify/model/names.hpp"
#include "reify/model/ops.hpp"
#include "reify/prompt/text.hpp"

namespace reify::prompt {

namespace {

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::set<std::string> variants(const std::string& name) {
  const auto c = model::canonical_name(name);
  return {c, singularize_head(c), pluralize_head(c)};
}

}  // namespace

std::string describe_tables(const std::vector<std::string>& names) {
  if (names.empty()) return {};
  return "The app has the following tables: " + join(names, ", ") + ".";
}

std::string describe_app(const model::ObjectModel& model) { return describe_tables(model::active_object_names(model)); }

std::string field_phrase(const model::Field& field) {
  if (field.multiplicity == model::Multiplicity::kMany) return "a list of " + pluralize_head(field.name);
  return with_article(field.name);
}

std::string describe_object(const model::ObjectDef& object) {
  std::vector<std::string> phrases;
  if (!object.deleted) {
    for (const auto& f : object.fields) {
      if (!f.deleted) phrases.push_back(field_phrase(f));
    }
  }
  const std::string subject = capitalize(with_article(object.name));
  if (phrases.empty()) return subject + " has nothing yet.";
  return subject + " has " + join_enumeration(phrases) + ".";
}

std::vector<std::string> describe_objects(const model::ObjectModel& model) {
  std::vector<std::string> out;
  for (const auto& o : model.objects) {
    if (!o.deleted) out.push_back(describe_object(o));
  }
  return out;
}

std::vector<std::string> type_vocabulary(const model::ObjectModel& model) {
  std::vector<std::string> v{"int", "float", "string", "datetime"};
  for (auto& n : model::active_object_names(model)) v.push_back(std::move(n));
  return v;
}

std::vector<std::string> dedupe_names(const std::vector<std::string>& candidates,
                                      const std::vector<std::string>& existing) {
  std::set<std::string> taken;
  for (const auto& e : existing) taken.merge(variants(e));
  std::vector<std::string> out;
  for (const auto& c : candidates) {
    const auto vs = variants(c);
    bool clash = false;
    for (const auto& v : vs) clash = clash || taken.contains(v);
    if (clash || model::canonical_name(c).empty()) continue;
    out.push_back(c);
    taken.insert(vs.begin(), vs.end());
  }
  return out;
}

std::vector<std::string> dedupe_method_names(const std::vector<std::string>& candidates,
                                             const std::vector<std::string>& existing) {
  std::set<std::string> taken;
  for (const auto& e : existing) taken.insert(to_lower(model::canonical_method_name(e)));
  std::vector<std::string> out;
  for (const auto& c : candidates) {
    const auto key = to_lower(model::canonical_method_name(c));
    if (key.empty() || !taken.insert(key).second) continue;
    out.push_back(c);
  }
  return out;
}

}  // namespace reify::prompt
