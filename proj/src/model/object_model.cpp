#include "reify/model/object_model.hpp"

#include "reify/error.hpp"

namespace reify {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kNameCollision: return "NameCollision";
    case ErrorCode::kUnknownTypeTarget: return "UnknownTypeTarget";
    case ErrorCode::kNotObjectTyped: return "NotObjectTyped";
    case ErrorCode::kTargetDeleted: return "TargetDeleted";
    case ErrorCode::kPhaseFinished: return "Finished";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDecode: return "DecodeError";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kMissingContext: return "MissingContext";
    case ErrorCode::kCatalog: return "CatalogError";
    case ErrorCode::kAuthMissing: return "AuthMissing";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kReplayMiss: return "ReplayMiss";
    case ErrorCode::kProvider: return "ProviderError";
    case ErrorCode::kPrecondition: return "PreconditionFailed";
    case ErrorCode::kSessionNotFound: return "SessionNotFound";
    case ErrorCode::kSessionFinished: return "Finished";
    case ErrorCode::kBusy: return "Busy";
    case ErrorCode::kCohortForbidden: return "CohortForbidden";
    case ErrorCode::kEmptyPrompt: return "EmptyPrompt";
    case ErrorCode::kUnknownAction: return "UnknownAction";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace reify

namespace reify::model {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kDraftingNames: return "draftingNames";
    case Phase::kFullModel: return "fullModel";
    case Phase::kFinished: return "finished";
  }
  return "draftingNames";
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::kSynthesized ? "synthesized" : "userAdded";
}

std::string_view to_string(Multiplicity multiplicity) {
  return multiplicity == Multiplicity::kMany ? "many" : "one";
}

std::string_view to_string(Primitive primitive) {
  switch (primitive) {
    case Primitive::kInt: return "int";
    case Primitive::kFloat: return "float";
    case Primitive::kString: return "string";
    case Primitive::kBoolean: return "boolean";
    case Primitive::kDatetime: return "datetime";
  }
  return "string";
}

std::optional<Phase> parse_phase(std::string_view text) {
  if (text == "draftingNames") return Phase::kDraftingNames;
  if (text == "fullModel") return Phase::kFullModel;
  if (text == "finished") return Phase::kFinished;
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  if (text == "synthesized") return Provenance::kSynthesized;
  if (text == "userAdded") return Provenance::kUserAdded;
  return std::nullopt;
}

std::optional<Multiplicity> parse_multiplicity(std::string_view text) {
  if (text == "one") return Multiplicity::kOne;
  if (text == "many") return Multiplicity::kMany;
  return std::nullopt;
}

std::optional<Primitive> parse_primitive(std::string_view text) {
  for (Primitive p : kAllPrimitives) {
    if (to_string(p) == text) return p;
  }
  if (text == "bool") return Primitive::kBoolean;
  return std::nullopt;
}

std::string FieldType::display() const {
  return is_primitive() ? std::string(to_string(primitive_kind())) : target();
}

std::string describe_path(const ObjectModel& model, const ComponentPath& path) {
  if (path.object.index >= model.objects.size()) return "<invalid>";
  const auto& obj = model.objects[path.object.index];
  if (path.field) {
    if (path.field->index >= obj.fields.size()) return obj.name + ".<invalid>";
    return obj.name + "." + obj.fields[path.field->index].name;
  }
  if (path.method) {
    if (path.method->index >= obj.methods.size()) return obj.name + "#<invalid>";
    return obj.name + "#" + obj.methods[path.method->index].name;
  }
  return obj.name;
}

}  // namespace reify::model
