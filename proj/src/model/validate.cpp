#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "reify/model/ops.hpp"

namespace reify::model {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDuplicateObjectName: return "DuplicateObjectName";
    case ViolationKind::kDuplicateFieldName: return "DuplicateFieldName";
    case ViolationKind::kDuplicateMethodName: return "DuplicateMethodName";
    case ViolationKind::kDanglingReference: return "DanglingReference";
    case ViolationKind::kUnknownTypeTarget: return "UnknownTypeTarget";
    case ViolationKind::kOrphanedReverse: return "OrphanedReverse";
  }
  return "Unknown";
}

std::vector<Violation> validate(const ObjectModel& model) {
  std::vector<Violation> out;

  // name -> has an active object with that name
  std::unordered_map<std::string, bool> object_names;
  for (const auto& obj : model.objects) {
    auto [it, inserted] = object_names.try_emplace(obj.name, !obj.deleted);
    if (!inserted && !obj.deleted) it->second = true;
  }

  std::unordered_set<std::string> seen_objects;
  for (std::size_t oi = 0; oi < model.objects.size(); ++oi) {
    const auto& obj = model.objects[oi];
    const ObjectId oid{oi};
    if (obj.deleted) continue;

    if (!seen_objects.insert(obj.name).second) {
      out.push_back({ViolationKind::kDuplicateObjectName, Severity::kError, ComponentPath::of(oid),
                     "duplicate active object name '" + obj.name + "'"});
    }

    std::unordered_set<std::string> seen_fields;
    for (std::size_t fi = 0; fi < obj.fields.size(); ++fi) {
      const auto& f = obj.fields[fi];
      if (f.deleted) continue;
      const auto path = ComponentPath::of(oid, FieldId{fi});
      if (!seen_fields.insert(f.name).second) {
        out.push_back({ViolationKind::kDuplicateFieldName, Severity::kError, path,
                       "duplicate active field name '" + obj.name + "." + f.name + "'"});
      }
      if (f.type.is_object_ref()) {
        const auto it = object_names.find(f.type.target());
        if (it == object_names.end()) {
          out.push_back({ViolationKind::kUnknownTypeTarget, Severity::kError, path,
                         "field '" + obj.name + "." + f.name + "' refers to unknown object '" +
                             f.type.target() + "'"});
        } else if (!it->second) {
          out.push_back({ViolationKind::kDanglingReference, Severity::kWarning, path,
                         "field '" + obj.name + "." + f.name + "' refers to deleted object '" +
                             f.type.target() + "'"});
        }
      }
      if (f.reverse_of) {
        const auto& link = *f.reverse_of;
        const bool linked = std::any_of(model.objects.begin(), model.objects.end(), [&](const ObjectDef& o) {
          return o.name == link.object &&
                 std::any_of(o.fields.begin(), o.fields.end(), [&](const Field& g) { return g.name == link.field; });
        });
        if (!linked) {
          out.push_back({ViolationKind::kOrphanedReverse, Severity::kError, path,
                         "reverse field '" + obj.name + "." + f.name + "' names missing field '" + link.object +
                             "." + link.field + "'"});
        }
      }
    }

    std::unordered_set<std::string> seen_methods;
    for (std::size_t mi = 0; mi < obj.methods.size(); ++mi) {
      const auto& m = obj.methods[mi];
      if (m.deleted) continue;
      if (!seen_methods.insert(m.name).second) {
        out.push_back({ViolationKind::kDuplicateMethodName, Severity::kError, ComponentPath::of(oid, MethodId{mi}),
                       "duplicate active method name '" + obj.name + "#" + m.name + "'"});
      }
    }
  }
  return out;
}

}  // namespace reify::model
