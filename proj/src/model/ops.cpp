#include "reify/model/ops.hpp"

#include <algorithm>

#include "reify/error.hpp"
#include "reify/model/names.hpp"

namespace reify::model {

namespace {

void require_editable(const ObjectModel& model) {
  if (model.phase == Phase::kFinished) {
    throw Error(ErrorCode::kPhaseFinished, "model is finished and can no longer be edited");
  }
}

ObjectDef& object_at(ObjectModel& model, ObjectId id) {
  if (id.index >= model.objects.size()) {
    throw Error(ErrorCode::kNotFound, "no object at index " + std::to_string(id.index));
  }
  return model.objects[id.index];
}

ObjectDef& active_object_at(ObjectModel& model, ObjectId id) {
  auto& obj = object_at(model, id);
  if (obj.deleted) throw Error(ErrorCode::kNotFound, "object '" + obj.name + "' is deleted");
  return obj;
}

Field& active_field_at(ObjectModel& model, ObjectId object, FieldId field) {
  auto& obj = active_object_at(model, object);
  if (field.index >= obj.fields.size()) {
    throw Error(ErrorCode::kNotFound, "object '" + obj.name + "' has no field at index " +
                                          std::to_string(field.index));
  }
  auto& f = obj.fields[field.index];
  if (f.deleted) throw Error(ErrorCode::kNotFound, "field '" + obj.name + "." + f.name + "' is deleted");
  return f;
}

std::string require_name(std::string name, std::string_view what) {
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " name is empty");
  return name;
}

bool field_name_taken(const ObjectDef& obj, std::string_view name, std::optional<std::size_t> except) {
  for (std::size_t i = 0; i < obj.fields.size(); ++i) {
    if (except && *except == i) continue;
    if (!obj.fields[i].deleted && obj.fields[i].name == name) return true;
  }
  return false;
}

bool method_name_taken(const ObjectDef& obj, std::string_view name, std::optional<std::size_t> except) {
  for (std::size_t i = 0; i < obj.methods.size(); ++i) {
    if (except && *except == i) continue;
    if (!obj.methods[i].deleted && obj.methods[i].name == name) return true;
  }
  return false;
}

bool object_name_taken(const ObjectModel& model, std::string_view name, std::optional<std::size_t> except) {
  for (std::size_t i = 0; i < model.objects.size(); ++i) {
    if (except && *except == i) continue;
    if (!model.objects[i].deleted && model.objects[i].name == name) return true;
  }
  return false;
}

bool object_exists(const ObjectModel& model, std::string_view name) {
  return std::any_of(model.objects.begin(), model.objects.end(),
                     [&](const ObjectDef& o) { return o.name == name; });
}

FieldType canonical_type(const ObjectModel& model, const FieldType& type) {
  if (type.is_primitive()) return type;
  std::string target = canonical_name(type.target());
  if (!object_exists(model, target)) {
    throw Error(ErrorCode::kUnknownTypeTarget, "no object named '" + target + "'");
  }
  return FieldType::object_ref(std::move(target));
}

// Rewrites reverse_of links after a field was renamed.
void relink_reverse(ObjectModel& model, const FieldRef& from, const FieldRef& to) {
  for (auto& obj : model.objects) {
    for (auto& f : obj.fields) {
      if (f.reverse_of && *f.reverse_of == from) f.reverse_of = to;
    }
  }
}

template <typename Id>
std::optional<Id> find_named(const auto& items, std::string_view name, bool include_deleted) {
  std::optional<Id> deleted_match;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].name != name) continue;
    if (!items[i].deleted) return Id{i};
    if (include_deleted) deleted_match = Id{i};
  }
  return deleted_match;
}

}  // namespace

ObjectId add_object(ObjectModel& model, std::string_view name, Provenance provenance) {
  require_editable(model);
  std::string canon = require_name(canonical_name(name), "object");
  if (object_name_taken(model, canon, std::nullopt)) {
    throw Error(ErrorCode::kDuplicateName, "object '" + canon + "' already exists");
  }
  ObjectDef obj;
  obj.name = std::move(canon);
  obj.provenance = provenance;
  model.objects.push_back(std::move(obj));
  return ObjectId{model.objects.size() - 1};
}

void rename_object(ObjectModel& model, ObjectId object, std::string_view new_name) {
  require_editable(model);
  auto& obj = active_object_at(model, object);
  std::string canon = require_name(canonical_name(new_name), "object");
  if (canon == obj.name) return;
  if (object_name_taken(model, canon, object.index)) {
    throw Error(ErrorCode::kDuplicateName, "object '" + canon + "' already exists");
  }

  const std::string old_name = obj.name;
  obj.name = canon;

  struct FieldRename {
    std::size_t object;
    std::size_t field;
  };
  std::vector<FieldRename> renamed;
  for (std::size_t oi = 0; oi < model.objects.size(); ++oi) {
    auto& owner = model.objects[oi];
    for (std::size_t fi = 0; fi < owner.fields.size(); ++fi) {
      auto& f = owner.fields[fi];
      if (f.reverse_of && f.reverse_of->object == old_name) f.reverse_of->object = canon;
      if (!f.type.is_object_ref() || f.type.target() != old_name) continue;
      f.type.retarget(canon);
      if (f.name == old_name && !field_name_taken(owner, canon, fi)) renamed.push_back({oi, fi});
    }
  }
  for (const auto& r : renamed) {
    auto& owner = model.objects[r.object];
    owner.fields[r.field].name = canon;
    relink_reverse(model, FieldRef{owner.name, old_name}, FieldRef{owner.name, canon});
  }
}

void soft_delete(ObjectModel& model, const ComponentPath& path) {
  require_editable(model);
  if (!path_exists(model, path)) throw Error(ErrorCode::kNotFound, "no component at that path");
  auto& obj = model.objects[path.object.index];
  if (path.field) {
    obj.fields[path.field->index].deleted = true;
  } else if (path.method) {
    obj.methods[path.method->index].deleted = true;
  } else {
    obj.deleted = true;
  }
}

void restore(ObjectModel& model, const ComponentPath& path) {
  require_editable(model);
  if (!path_exists(model, path)) throw Error(ErrorCode::kNotFound, "no component at that path");
  auto& obj = model.objects[path.object.index];
  if (path.field) {
    auto& f = obj.fields[path.field->index];
    if (!f.deleted) return;
    if (field_name_taken(obj, f.name, path.field->index)) {
      throw Error(ErrorCode::kNameCollision, "field name '" + f.name + "' was reused while deleted");
    }
    f.deleted = false;
  } else if (path.method) {
    auto& m = obj.methods[path.method->index];
    if (!m.deleted) return;
    if (method_name_taken(obj, m.name, path.method->index)) {
      throw Error(ErrorCode::kNameCollision, "method name '" + m.name + "' was reused while deleted");
    }
    m.deleted = false;
  } else {
    if (!obj.deleted) return;
    if (object_name_taken(model, obj.name, path.object.index)) {
      throw Error(ErrorCode::kNameCollision, "object name '" + obj.name + "' was reused while deleted");
    }
    obj.deleted = false;
  }
}

FieldId add_field(ObjectModel& model, ObjectId object, std::string_view name, FieldType type,
                  Multiplicity multiplicity, Provenance provenance) {
  require_editable(model);
  auto& obj = active_object_at(model, object);
  std::string canon = require_name(canonical_name(name), "field");
  if (field_name_taken(obj, canon, std::nullopt)) {
    throw Error(ErrorCode::kDuplicateName, "field '" + obj.name + "." + canon + "' already exists");
  }
  Field f;
  f.name = std::move(canon);
  f.type = canonical_type(model, type);
  f.multiplicity = multiplicity;
  f.provenance = provenance;
  obj.fields.push_back(std::move(f));
  return FieldId{obj.fields.size() - 1};
}

void edit_field(ObjectModel& model, ObjectId object, FieldId field, const FieldEdit& edit) {
  require_editable(model);
  auto& f = active_field_at(model, object, field);
  auto& obj = model.objects[object.index];

  std::optional<std::string> new_name;
  if (edit.name) {
    new_name = require_name(canonical_name(*edit.name), "field");
    if (*new_name != f.name && field_name_taken(obj, *new_name, field.index)) {
      throw Error(ErrorCode::kDuplicateName, "field '" + obj.name + "." + *new_name + "' already exists");
    }
  }
  std::optional<FieldType> new_type;
  if (edit.type) new_type = canonical_type(model, *edit.type);

  if (new_name && *new_name != f.name) {
    const FieldRef from{obj.name, f.name};
    f.name = *new_name;
    relink_reverse(model, from, FieldRef{obj.name, *new_name});
  }
  if (new_type) f.type = std::move(*new_type);
  if (edit.multiplicity) f.multiplicity = *edit.multiplicity;
}

void toggle_multiplicity(ObjectModel& model, ObjectId object, FieldId field) {
  require_editable(model);
  auto& f = active_field_at(model, object, field);
  f.multiplicity = f.multiplicity == Multiplicity::kOne ? Multiplicity::kMany : Multiplicity::kOne;
}

void toggle_two_way(ObjectModel& model, ObjectId object, FieldId field) {
  require_editable(model);
  const auto& f = active_field_at(model, object, field);
  if (!f.type.is_object_ref()) {
    throw Error(ErrorCode::kNotObjectTyped, "field '" + f.name + "' is not typed with an object");
  }
  const auto& source = model.objects[object.index];
  const auto target_id = find_object(model, f.type.target());
  if (!target_id) {
    if (object_exists(model, f.type.target())) {
      throw Error(ErrorCode::kTargetDeleted, "object '" + f.type.target() + "' is deleted");
    }
    throw Error(ErrorCode::kUnknownTypeTarget, "no object named '" + f.type.target() + "'");
  }
  const FieldRef link{source.name, f.name};
  const std::string reverse_name = source.name;
  auto& target = model.objects[target_id->index];

  std::optional<std::size_t> deleted_reverse;
  for (std::size_t i = 0; i < target.fields.size(); ++i) {
    auto& candidate = target.fields[i];
    if (!candidate.reverse_of || *candidate.reverse_of != link) continue;
    if (!candidate.deleted) {
      candidate.deleted = true;
      return;
    }
    deleted_reverse = i;
  }

  if (deleted_reverse) {
    auto& candidate = target.fields[*deleted_reverse];
    if (field_name_taken(target, candidate.name, *deleted_reverse)) {
      throw Error(ErrorCode::kDuplicateName,
                  "field '" + target.name + "." + candidate.name + "' already exists");
    }
    candidate.deleted = false;
    return;
  }

  if (field_name_taken(target, reverse_name, std::nullopt)) {
    throw Error(ErrorCode::kDuplicateName, "field '" + target.name + "." + reverse_name + "' already exists");
  }
  Field reverse;
  reverse.name = reverse_name;
  reverse.type = FieldType::object_ref(source.name);
  reverse.multiplicity = Multiplicity::kMany;
  reverse.provenance = Provenance::kUserAdded;
  reverse.reverse_of = link;
  target.fields.push_back(std::move(reverse));
}

MethodId add_method(ObjectModel& model, ObjectId object, std::string_view name, Provenance provenance) {
  require_editable(model);
  auto& obj = active_object_at(model, object);
  std::string canon = require_name(canonical_method_name(name), "method");
  if (method_name_taken(obj, canon, std::nullopt)) {
    throw Error(ErrorCode::kDuplicateName, "method '" + obj.name + "#" + canon + "' already exists");
  }
  Method m;
  m.name = std::move(canon);
  m.provenance = provenance;
  obj.methods.push_back(std::move(m));
  return MethodId{obj.methods.size() - 1};
}

void rename_method(ObjectModel& model, ObjectId object, MethodId method, std::string_view new_name) {
  require_editable(model);
  auto& obj = active_object_at(model, object);
  if (method.index >= obj.methods.size() || obj.methods[method.index].deleted) {
    throw Error(ErrorCode::kNotFound, "no active method at index " + std::to_string(method.index));
  }
  std::string canon = require_name(canonical_method_name(new_name), "method");
  if (method_name_taken(obj, canon, method.index)) {
    throw Error(ErrorCode::kDuplicateName, "method '" + obj.name + "#" + canon + "' already exists");
  }
  obj.methods[method.index].name = std::move(canon);
}

void set_phase(ObjectModel& model, Phase phase) {
  if (model.phase == Phase::kFinished && phase != Phase::kFinished) require_editable(model);
  model.phase = phase;
}

std::size_t component_count(const ObjectModel& model) {
  std::size_t count = 0;
  for (const auto& obj : model.objects) {
    if (obj.deleted) continue;
    ++count;
    count += std::count_if(obj.fields.begin(), obj.fields.end(), [](const Field& f) { return !f.deleted; });
    count += std::count_if(obj.methods.begin(), obj.methods.end(), [](const Method& m) { return !m.deleted; });
  }
  return count;
}

bool path_exists(const ObjectModel& model, const ComponentPath& path) {
  if (path.field && path.method) return false;
  if (path.object.index >= model.objects.size()) return false;
  const auto& obj = model.objects[path.object.index];
  if (path.field) return path.field->index < obj.fields.size();
  if (path.method) return path.method->index < obj.methods.size();
  return true;
}

bool is_active(const ObjectModel& model, const ComponentPath& path) {
  if (!path_exists(model, path)) return false;
  const auto& obj = model.objects[path.object.index];
  if (obj.deleted) return false;
  if (path.field) return !obj.fields[path.field->index].deleted;
  if (path.method) return !obj.methods[path.method->index].deleted;
  return true;
}

std::optional<ObjectId> find_object(const ObjectModel& model, std::string_view name) {
  return find_named<ObjectId>(model.objects, canonical_name(name), false);
}

std::optional<ObjectId> find_object_any(const ObjectModel& model, std::string_view name) {
  return find_named<ObjectId>(model.objects, canonical_name(name), true);
}

std::optional<FieldId> find_field(const ObjectDef& object, std::string_view name) {
  return find_named<FieldId>(object.fields, canonical_name(name), false);
}

std::optional<FieldId> find_field_any(const ObjectDef& object, std::string_view name) {
  return find_named<FieldId>(object.fields, canonical_name(name), true);
}

std::optional<MethodId> find_method(const ObjectDef& object, std::string_view name) {
  return find_named<MethodId>(object.methods, canonical_method_name(name), false);
}

std::optional<MethodId> find_method_any(const ObjectDef& object, std::string_view name) {
  return find_named<MethodId>(object.methods, canonical_method_name(name), true);
}

std::vector<std::string> active_object_names(const ObjectModel& model) {
  std::vector<std::string> out;
  for (const auto& obj : model.objects) {
    if (!obj.deleted) out.push_back(obj.name);
  }
  return out;
}

std::vector<std::string> active_field_names(const ObjectDef& object) {
  std::vector<std::string> out;
  for (const auto& f : object.fields) {
    if (!f.deleted) out.push_back(f.name);
  }
  return out;
}

std::vector<std::string> active_method_names(const ObjectDef& object) {
  std::vector<std::string> out;
  for (const auto& m : object.methods) {
    if (!m.deleted) out.push_back(m.name);
  }
  return out;
}

ObjectModel active_view(const ObjectModel& model) {
  ObjectModel view;
  view.prompt = model.prompt;
  view.phase = model.phase;
  for (const auto& obj : model.objects) {
    if (obj.deleted) continue;
    ObjectDef copy = obj;
    std::erase_if(copy.fields, [](const Field& f) { return f.deleted; });
    std::erase_if(copy.methods, [](const Method& m) { return m.deleted; });
    view.objects.push_back(std::move(copy));
  }
  return view;
}

}  // namespace reify::model
