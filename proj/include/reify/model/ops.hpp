#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reify/model/object_model.hpp"

namespace reify::model {

// Every mutating operation throws reify::Error and leaves the model untouched
// on failure. All of them reject a model whose phase is Finished.

ObjectId add_object(ObjectModel& model, std::string_view name, Provenance provenance);

// Retargets every field typed with the old name. A field whose own name equals
// the old object name and whose type pointed at it is renamed as well, unless
// that would collide inside its object.
void rename_object(ObjectModel& model, ObjectId object, std::string_view new_name);

void soft_delete(ObjectModel& model, const ComponentPath& path);
void restore(ObjectModel& model, const ComponentPath& path);

FieldId add_field(ObjectModel& model, ObjectId object, std::string_view name, FieldType type,
                  Multiplicity multiplicity, Provenance provenance);

struct FieldEdit {
  std::optional<std::string> name;
  std::optional<FieldType> type;
  std::optional<Multiplicity> multiplicity;
};
void edit_field(ObjectModel& model, ObjectId object, FieldId field, const FieldEdit& edit);

void toggle_multiplicity(ObjectModel& model, ObjectId object, FieldId field);

// Adds, or soft-deletes, the reverse field on the referenced object. Only
// reverse fields created by this toggle (reverse_of set) are ever removed.
void toggle_two_way(ObjectModel& model, ObjectId object, FieldId field);

MethodId add_method(ObjectModel& model, ObjectId object, std::string_view name, Provenance provenance);
void rename_method(ObjectModel& model, ObjectId object, MethodId method, std::string_view new_name);

void set_phase(ObjectModel& model, Phase phase);

// Active objects + active fields + active methods. A field or method counts
// only while both it and its owning object are active.
std::size_t component_count(const ObjectModel& model);

bool is_active(const ObjectModel& model, const ComponentPath& path);
bool path_exists(const ObjectModel& model, const ComponentPath& path);

std::optional<ObjectId> find_object(const ObjectModel& model, std::string_view name);
// Prefers the active object; otherwise the most recently added deleted one.
std::optional<ObjectId> find_object_any(const ObjectModel& model, std::string_view name);
std::optional<FieldId> find_field(const ObjectDef& object, std::string_view name);
std::optional<FieldId> find_field_any(const ObjectDef& object, std::string_view name);
std::optional<MethodId> find_method(const ObjectDef& object, std::string_view name);
std::optional<MethodId> find_method_any(const ObjectDef& object, std::string_view name);

std::vector<std::string> active_object_names(const ObjectModel& model);
std::vector<std::string> active_field_names(const ObjectDef& object);
std::vector<std::string> active_method_names(const ObjectDef& object);

enum class ViolationKind {
  kDuplicateObjectName,
  kDuplicateFieldName,
  kDuplicateMethodName,
  kDanglingReference,
  kUnknownTypeTarget,
  kOrphanedReverse,
};

enum class Severity { kWarning, kError };

struct Violation {
  ViolationKind kind;
  Severity severity;
  ComponentPath path;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(ViolationKind kind);

// Reports violations in model order: per object, the object itself, then its
// fields, then its methods.
std::vector<Violation> validate(const ObjectModel& model);

// Read-only view with deleted components stripped; used for comparisons
// "on the active view".
ObjectModel active_view(const ObjectModel& model);

}  // namespace reify::model
