#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace reify::model {

enum class Phase { kDraftingNames, kFullModel, kFinished };
enum class Provenance { kSynthesized, kUserAdded };
enum class Multiplicity { kOne, kMany };
enum class Primitive { kInt, kFloat, kString, kBoolean, kDatetime };

inline constexpr Primitive kAllPrimitives[] = {Primitive::kInt, Primitive::kFloat, Primitive::kString,
                                               Primitive::kBoolean, Primitive::kDatetime};

std::string_view to_string(Phase phase);
std::string_view to_string(Provenance provenance);
std::string_view to_string(Multiplicity multiplicity);
std::string_view to_string(Primitive primitive);

std::optional<Phase> parse_phase(std::string_view text);
std::optional<Provenance> parse_provenance(std::string_view text);
std::optional<Multiplicity> parse_multiplicity(std::string_view text);
// Accepts the canonical spelling plus "bool" for boolean.
std::optional<Primitive> parse_primitive(std::string_view text);

// Either a primitive or a reference to another object by canonical name.
// List-ness lives on Field::multiplicity.
class FieldType {
 public:
  static FieldType primitive(Primitive p) { return FieldType(p); }
  static FieldType object_ref(std::string target) { return FieldType(std::move(target)); }

  bool is_primitive() const noexcept { return std::holds_alternative<Primitive>(value_); }
  bool is_object_ref() const noexcept { return std::holds_alternative<std::string>(value_); }

  Primitive primitive_kind() const { return std::get<Primitive>(value_); }
  const std::string& target() const { return std::get<std::string>(value_); }

  void retarget(std::string target) { value_ = std::move(target); }

  // "string", "customer", ...
  std::string display() const;

  friend bool operator==(const FieldType&, const FieldType&) = default;

 private:
  explicit FieldType(Primitive p) : value_(p) {}
  explicit FieldType(std::string target) : value_(std::move(target)) {}

  std::variant<Primitive, std::string> value_;
};

struct FieldRef {
  std::string object;
  std::string field;

  friend bool operator==(const FieldRef&, const FieldRef&) = default;
};

struct Field {
  std::string name;
  FieldType type = FieldType::primitive(Primitive::kString);
  Multiplicity multiplicity = Multiplicity::kOne;
  bool deleted = false;
  Provenance provenance = Provenance::kUserAdded;
  // Set on fields created by the two-way toggle; names the originating field.
  std::optional<FieldRef> reverse_of;

  friend bool operator==(const Field&, const Field&) = default;
};

struct Method {
  std::string name;
  bool deleted = false;
  Provenance provenance = Provenance::kUserAdded;

  friend bool operator==(const Method&, const Method&) = default;
};

struct ObjectDef {
  std::string name;
  std::vector<Field> fields;
  std::vector<Method> methods;
  bool deleted = false;
  Provenance provenance = Provenance::kUserAdded;

  friend bool operator==(const ObjectDef&, const ObjectDef&) = default;
};

struct ObjectModel {
  std::string prompt;
  std::vector<ObjectDef> objects;
  Phase phase = Phase::kDraftingNames;

  friend bool operator==(const ObjectModel&, const ObjectModel&) = default;
};

// Handles are positions. Components are never physically removed, so a
// handle stays valid for the lifetime of the model.
struct ObjectId {
  std::size_t index = 0;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};
struct FieldId {
  std::size_t index = 0;
  friend auto operator<=>(const FieldId&, const FieldId&) = default;
};
struct MethodId {
  std::size_t index = 0;
  friend auto operator<=>(const MethodId&, const MethodId&) = default;
};

struct ComponentPath {
  ObjectId object;
  std::optional<FieldId> field;
  std::optional<MethodId> method;

  static ComponentPath of(ObjectId o) { return {o, std::nullopt, std::nullopt}; }
  static ComponentPath of(ObjectId o, FieldId f) { return {o, f, std::nullopt}; }
  static ComponentPath of(ObjectId o, MethodId m) { return {o, std::nullopt, m}; }

  bool is_object() const noexcept { return !field && !method; }

  friend bool operator==(const ComponentPath&, const ComponentPath&) = default;
};

// "customer", "customer.phone number", "customer#makeReservation"
std::string describe_path(const ObjectModel& model, const ComponentPath& path);

}  // namespace reify::model
