#include "reify/model/codec.hpp"

#include "reify/error.hpp"
#include "reify/model/ops.hpp"

namespace reify::model {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::kDecode, "invalid model document at " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(at, std::string("missing key '") + key + "'");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& at) {
  const auto& v = member(obj, key, at);
  if (!v.is_string()) schema_error(at + "/" + key, "expected a string");
  return v.get<std::string>();
}

bool bool_member(const json& obj, const char* key, const std::string& at) {
  const auto& v = member(obj, key, at);
  if (!v.is_boolean()) schema_error(at + "/" + key, "expected a boolean");
  return v.get<bool>();
}

const json& array_member(const json& obj, const char* key, const std::string& at) {
  const auto& v = member(obj, key, at);
  if (!v.is_array()) schema_error(at + "/" + key, "expected an array");
  return v;
}

void require_object(const json& v, const std::string& at) {
  if (!v.is_object()) schema_error(at, "expected an object");
}

Provenance provenance_member(const json& obj, const std::string& at) {
  auto p = parse_provenance(string_member(obj, "provenance", at));
  if (!p) schema_error(at + "/provenance", "unknown provenance");
  return *p;
}

FieldType decode_type_at(const json& doc, const std::string& at) {
  require_object(doc, at);
  const std::string kind = string_member(doc, "kind", at);
  if (kind == "primitive") {
    auto p = parse_primitive(string_member(doc, "primitive", at));
    if (!p) schema_error(at + "/primitive", "unknown primitive");
    if (doc.contains("target")) schema_error(at, "primitive type must not carry a target");
    return FieldType::primitive(*p);
  }
  if (kind == "objectRef") {
    if (doc.contains("primitive")) schema_error(at, "object reference must not carry a primitive");
    auto target = string_member(doc, "target", at);
    if (target.empty()) schema_error(at + "/target", "empty target");
    return FieldType::object_ref(std::move(target));
  }
  schema_error(at + "/kind", "unknown type kind '" + kind + "'");
}

Field decode_field(const json& doc, const std::string& at) {
  require_object(doc, at);
  Field f;
  f.name = string_member(doc, "name", at);
  f.type = decode_type_at(member(doc, "type", at), at + "/type");
  auto m = parse_multiplicity(string_member(doc, "multiplicity", at));
  if (!m) schema_error(at + "/multiplicity", "unknown multiplicity");
  f.multiplicity = *m;
  f.deleted = bool_member(doc, "deleted", at);
  f.provenance = provenance_member(doc, at);
  if (auto it = doc.find("reverseOf"); it != doc.end()) {
    require_object(*it, at + "/reverseOf");
    f.reverse_of = FieldRef{string_member(*it, "object", at + "/reverseOf"),
                            string_member(*it, "field", at + "/reverseOf")};
  }
  return f;
}

Method decode_method(const json& doc, const std::string& at) {
  require_object(doc, at);
  Method m;
  m.name = string_member(doc, "name", at);
  m.deleted = bool_member(doc, "deleted", at);
  m.provenance = provenance_member(doc, at);
  return m;
}

ObjectDef decode_object(const json& doc, const std::string& at) {
  require_object(doc, at);
  ObjectDef obj;
  obj.name = string_member(doc, "name", at);
  obj.deleted = bool_member(doc, "deleted", at);
  obj.provenance = provenance_member(doc, at);
  const auto& fields = array_member(doc, "fields", at);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    obj.fields.push_back(decode_field(fields[i], at + "/fields/" + std::to_string(i)));
  }
  const auto& methods = array_member(doc, "methods", at);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    obj.methods.push_back(decode_method(methods[i], at + "/methods/" + std::to_string(i)));
  }
  return obj;
}

ordered_json encode_field(const Field& f) {
  ordered_json out;
  out["name"] = f.name;
  out["type"] = encode_field_type(f.type);
  out["multiplicity"] = to_string(f.multiplicity);
  out["deleted"] = f.deleted;
  out["provenance"] = to_string(f.provenance);
  if (f.reverse_of) {
    out["reverseOf"] = ordered_json{{"object", f.reverse_of->object}, {"field", f.reverse_of->field}};
  }
  return out;
}

}  // namespace

ordered_json encode_field_type(const FieldType& type) {
  ordered_json out;
  if (type.is_primitive()) {
    out["kind"] = "primitive";
    out["primitive"] = to_string(type.primitive_kind());
  } else {
    out["kind"] = "objectRef";
    out["target"] = type.target();
  }
  return out;
}

FieldType decode_field_type(const json& doc) { return decode_type_at(doc, ""); }

ordered_json encode_model(const ObjectModel& model) {
  ordered_json doc;
  doc["prompt"] = model.prompt;
  doc["phase"] = to_string(model.phase);
  auto objects = ordered_json::array();
  for (const auto& obj : model.objects) {
    ordered_json o;
    o["name"] = obj.name;
    o["deleted"] = obj.deleted;
    o["provenance"] = to_string(obj.provenance);
    auto fields = ordered_json::array();
    for (const auto& f : obj.fields) fields.push_back(encode_field(f));
    o["fields"] = std::move(fields);
    auto methods = ordered_json::array();
    for (const auto& m : obj.methods) {
      methods.push_back(ordered_json{{"name", m.name}, {"deleted", m.deleted}, {"provenance", to_string(m.provenance)}});
    }
    o["methods"] = std::move(methods);
    objects.push_back(std::move(o));
  }
  doc["objects"] = std::move(objects);
  return doc;
}

std::string encode_model_text(const ObjectModel& model) { return encode_model(model).dump(2) + "\n"; }

ObjectModel decode_model_json(const json& doc) {
  require_object(doc, "");
  ObjectModel model;
  model.prompt = string_member(doc, "prompt", "");
  auto phase = parse_phase(string_member(doc, "phase", ""));
  if (!phase) schema_error("/phase", "unknown phase");
  model.phase = *phase;
  const auto& objects = array_member(doc, "objects", "");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    model.objects.push_back(decode_object(objects[i], "/objects/" + std::to_string(i)));
  }
  return model;
}

ObjectModel decode_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kDecode, "malformed model document at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return decode_model_json(doc);
}

std::string export_model_text(const ObjectModel& model, const ExportOptions& options) {
  ObjectModel out = model;
  for (const auto& v : validate(model)) {
    if (v.kind != ViolationKind::kDanglingReference) continue;
    if (!options.coerce_dangling_to_string) {
      throw Error(ErrorCode::kDanglingReference, v.message);
    }
    out.objects[v.path.object.index].fields[v.path.field->index].type = FieldType::primitive(Primitive::kString);
  }
  return encode_model_text(out);
}

}  // namespace reify::model
