#include <algorithm>

#include "doctest.h"
#include "reify/error.hpp"
#include "reify/model/ops.hpp"
#include "support/models.hpp"

using namespace reify::model;
using reify::Error;
using reify::ErrorCode;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected reify::Error");
  return ErrorCode::kIo;
}

ObjectModel fresh() {
  ObjectModel m;
  m.prompt = "test app";
  return m;
}

}  // namespace

TEST_CASE("add_object canonicalizes and rejects duplicates") {
  auto m = fresh();
  const auto id = add_object(m, "  Menu   Item ", Provenance::kUserAdded);
  CHECK(m.objects[id.index].name == "menu item");
  CHECK(m.objects[id.index].fields.empty());
  CHECK(m.objects[id.index].methods.empty());

  add_object(m, "customer", Provenance::kUserAdded);
  CHECK(code_of([&] { add_object(m, "customer", Provenance::kUserAdded); }) == ErrorCode::kDuplicateName);
  CHECK(code_of([&] { add_object(m, "CUSTOMER", Provenance::kUserAdded); }) == ErrorCode::kDuplicateName);
  CHECK(code_of([&] { add_object(m, "   ", Provenance::kUserAdded); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("add waiter to the restaurant model keeps it valid") {
  auto m = reify::testing::restaurant_model();
  add_object(m, "waiter", Provenance::kUserAdded);
  CHECK(find_object(m, "waiter").has_value());
  CHECK(validate(m).empty());
}

TEST_CASE("edits are rejected once finished") {
  auto m = fresh();
  const auto id = add_object(m, "a", Provenance::kUserAdded);
  set_phase(m, Phase::kFinished);
  CHECK(code_of([&] { add_object(m, "b", Provenance::kUserAdded); }) == ErrorCode::kPhaseFinished);
  CHECK(code_of([&] { soft_delete(m, ComponentPath::of(id)); }) == ErrorCode::kPhaseFinished);
  CHECK(code_of([&] { set_phase(m, Phase::kFullModel); }) == ErrorCode::kPhaseFinished);
}

TEST_CASE("rename_object propagates into types and same-named fields") {
  auto m = reify::testing::restaurant_model();
  const auto reservation = *find_object(m, "reservation");
  rename_object(m, reservation, "Booking");

  const auto& customer = m.objects[find_object(m, "customer")->index];
  const auto fid = find_field(customer, "booking");
  REQUIRE(fid.has_value());
  const auto& f = customer.fields[fid->index];
  CHECK(f.type == FieldType::object_ref("booking"));
  CHECK(f.multiplicity == Multiplicity::kMany);
  CHECK_FALSE(find_field(customer, "reservation").has_value());
}

TEST_CASE("rename_object without referrers only renames the object") {
  auto m = reify::testing::restaurant_model();
  const auto before = m;
  rename_object(m, *find_object(m, "customer"), "patron");
  // reservation.customer is typed customer, so it follows.
  auto expected = before;
  expected.objects[0].name = "patron";
  auto& rf = expected.objects[1].fields[2];
  rf.type = FieldType::object_ref("patron");
  rf.name = "patron";
  CHECK(m == expected);

  auto m2 = reify::testing::restaurant_model();
  rename_object(m2, *find_object(m2, "menu"), "carte");
  auto expected2 = reify::testing::restaurant_model();
  expected2.objects[4].name = "carte";
  CHECK(m2 == expected2);
}

TEST_CASE("rename_object keeps user chosen field names") {
  auto m = fresh();
  const auto waiter = add_object(m, "waiter", Provenance::kUserAdded);
  const auto table = add_object(m, "table", Provenance::kUserAdded);
  add_field(m, table, "host", FieldType::object_ref("waiter"), Multiplicity::kOne, Provenance::kUserAdded);
  rename_object(m, waiter, "server");
  CHECK(m.objects[table.index].fields[0].name == "host");
  CHECK(m.objects[table.index].fields[0].type == FieldType::object_ref("server"));
}

TEST_CASE("rename teacher to instructor updates every referring field (full scan oracle)") {
  auto m = fresh();
  const auto teacher = add_object(m, "teacher", Provenance::kUserAdded);
  const auto student = add_object(m, "student", Provenance::kUserAdded);
  const auto course = add_object(m, "course", Provenance::kUserAdded);
  add_field(m, student, "teacher", FieldType::object_ref("teacher"), Multiplicity::kOne, Provenance::kUserAdded);
  add_field(m, course, "lecturer", FieldType::object_ref("teacher"), Multiplicity::kMany, Provenance::kUserAdded);
  add_field(m, course, "title", FieldType::primitive(Primitive::kString), Multiplicity::kOne, Provenance::kUserAdded);
  (void)teacher;

  rename_object(m, teacher, "instructor");

  std::size_t old_refs = 0;
  std::size_t new_refs = 0;
  for (const auto& o : m.objects) {
    for (const auto& f : o.fields) {
      if (!f.type.is_object_ref()) continue;
      old_refs += f.type.target() == "teacher";
      new_refs += f.type.target() == "instructor";
    }
  }
  CHECK(old_refs == 0);
  CHECK(new_refs == 2);
  CHECK(m.objects[student.index].fields[0].name == "instructor");
  CHECK(m.objects[course.index].fields[0].name == "lecturer");
}

TEST_CASE("rename to an existing active name fails") {
  auto m = reify::testing::restaurant_model();
  CHECK(code_of([&] { rename_object(m, *find_object(m, "menu"), "order"); }) == ErrorCode::kDuplicateName);
  CHECK(m == reify::testing::restaurant_model());
}

TEST_CASE("soft_delete and restore round trip") {
  auto m = reify::testing::restaurant_model();
  const auto waiter = add_object(m, "waiter", Provenance::kSynthesized);
  const auto original = m;
  soft_delete(m, ComponentPath::of(waiter));
  CHECK(m.objects[waiter.index].deleted);
  CHECK(component_count(m) == component_count(original) - 1);
  restore(m, ComponentPath::of(waiter));
  CHECK(m == original);
}

TEST_CASE("deleting a referenced object yields a dangling warning") {
  auto m = reify::testing::restaurant_model();
  soft_delete(m, ComponentPath::of(*find_object(m, "reservation")));
  const auto v = validate(m);
  // customer.reservation is the only active referrer; reservation.customer
  // sits on the deleted object.
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kDanglingReference);
  CHECK(v[0].severity == Severity::kWarning);
  CHECK(describe_path(m, v[0].path) == "customer.reservation");
}

TEST_CASE("deleting 2 of 6 synthesized objects") {
  auto m = fresh();
  for (const char* n : {"customer", "reservation", "order", "menu item", "table", "waiter"}) {
    add_object(m, n, Provenance::kSynthesized);
  }
  soft_delete(m, ComponentPath::of(ObjectId{4}));
  soft_delete(m, ComponentPath::of(ObjectId{5}));
  CHECK(active_object_names(m).size() == 4);
  CHECK(m.objects.size() == 6);
  CHECK(component_count(m) == 4);
}

TEST_CASE("restore detects a name reused while deleted") {
  auto m = fresh();
  const auto first = add_object(m, "waiter", Provenance::kSynthesized);
  soft_delete(m, ComponentPath::of(first));
  add_object(m, "waiter", Provenance::kUserAdded);
  CHECK(code_of([&] { restore(m, ComponentPath::of(first)); }) == ErrorCode::kNameCollision);
  CHECK(code_of([&] { restore(m, ComponentPath::of(ObjectId{9})); }) == ErrorCode::kNotFound);
  CHECK(code_of([&] { soft_delete(m, ComponentPath::of(first, FieldId{0})); }) == ErrorCode::kNotFound);
}

TEST_CASE("add_field examples") {
  auto m = reify::testing::restaurant_model();
  const auto customer = *find_object(m, "customer");
  const auto guest = add_object(m, "guest", Provenance::kUserAdded);
  const auto fid = add_field(m, guest, "phone number", FieldType::primitive(Primitive::kString), Multiplicity::kOne,
                             Provenance::kUserAdded);
  CHECK(m.objects[guest.index].fields[fid.index].name == "phone number");

  CHECK(code_of([&] {
          add_field(m, customer, "ghost", FieldType::object_ref("ghost"), Multiplicity::kOne, Provenance::kUserAdded);
        }) == ErrorCode::kUnknownTypeTarget);
  CHECK(code_of([&] {
          add_field(m, customer, "Address", FieldType::primitive(Primitive::kString), Multiplicity::kOne,
                    Provenance::kUserAdded);
        }) == ErrorCode::kDuplicateName);

  const auto list = add_field(m, guest, "reservation", FieldType::object_ref("Reservation"), Multiplicity::kMany,
                              Provenance::kUserAdded);
  CHECK(m.objects[guest.index].fields[list.index].type == FieldType::object_ref("reservation"));
  CHECK(to_string(m.objects[guest.index].fields[list.index].multiplicity) == "many");
}

TEST_CASE("toggle_multiplicity is an involution and rejects deleted fields") {
  auto m = fresh();
  const auto customer = add_object(m, "customer", Provenance::kUserAdded);
  add_object(m, "order", Provenance::kUserAdded);
  const auto f = add_field(m, customer, "order", FieldType::object_ref("order"), Multiplicity::kOne,
                           Provenance::kUserAdded);
  toggle_multiplicity(m, customer, f);
  CHECK(m.objects[customer.index].fields[f.index].multiplicity == Multiplicity::kMany);
  toggle_multiplicity(m, customer, f);
  CHECK(m.objects[customer.index].fields[f.index].multiplicity == Multiplicity::kOne);

  soft_delete(m, ComponentPath::of(customer, f));
  CHECK(code_of([&] { toggle_multiplicity(m, customer, f); }) == ErrorCode::kNotFound);
}

TEST_CASE("toggle_two_way adds and removes the reverse field") {
  auto m = fresh();
  const auto student = add_object(m, "student", Provenance::kUserAdded);
  const auto teacher = add_object(m, "teacher", Provenance::kUserAdded);
  const auto f = add_field(m, student, "teacher", FieldType::object_ref("teacher"), Multiplicity::kOne,
                           Provenance::kUserAdded);
  const auto name = add_field(m, student, "name", FieldType::primitive(Primitive::kString), Multiplicity::kOne,
                              Provenance::kUserAdded);
  const auto before = active_view(m);

  toggle_two_way(m, student, f);
  const auto& t = m.objects[teacher.index];
  const auto rev = find_field(t, "student");
  REQUIRE(rev.has_value());
  CHECK(t.fields[rev->index].type == FieldType::object_ref("student"));
  CHECK(t.fields[rev->index].multiplicity == Multiplicity::kMany);
  CHECK(t.fields[rev->index].reverse_of == FieldRef{"student", "teacher"});
  CHECK(validate(m).empty());

  toggle_two_way(m, student, f);
  CHECK_FALSE(find_field(m.objects[teacher.index], "student").has_value());
  CHECK(active_view(m) == before);

  CHECK(code_of([&] { toggle_two_way(m, student, name); }) == ErrorCode::kNotObjectTyped);

  soft_delete(m, ComponentPath::of(teacher));
  CHECK(code_of([&] { toggle_two_way(m, student, f); }) == ErrorCode::kTargetDeleted);
}

TEST_CASE("toggle_two_way leaves a user-created reverse field alone") {
  auto m = fresh();
  const auto student = add_object(m, "student", Provenance::kUserAdded);
  const auto teacher = add_object(m, "teacher", Provenance::kUserAdded);
  const auto f = add_field(m, student, "teacher", FieldType::object_ref("teacher"), Multiplicity::kOne,
                           Provenance::kUserAdded);
  add_field(m, teacher, "student", FieldType::object_ref("student"), Multiplicity::kMany, Provenance::kUserAdded);
  const auto before = m;
  CHECK(code_of([&] { toggle_two_way(m, student, f); }) == ErrorCode::kDuplicateName);
  CHECK(m == before);
}

TEST_CASE("rename keeps two-way links connected") {
  auto m = fresh();
  const auto student = add_object(m, "student", Provenance::kUserAdded);
  const auto teacher = add_object(m, "teacher", Provenance::kUserAdded);
  const auto f = add_field(m, student, "teacher", FieldType::object_ref("teacher"), Multiplicity::kOne,
                           Provenance::kUserAdded);
  toggle_two_way(m, student, f);
  rename_object(m, student, "pupil");
  rename_object(m, teacher, "tutor");
  CHECK(validate(m).empty());
  const auto& t = m.objects[teacher.index];
  REQUIRE(find_field(t, "pupil").has_value());
  CHECK(t.fields[find_field(t, "pupil")->index].reverse_of == FieldRef{"pupil", "tutor"});
  // Still recognized as toggle-created: the second toggle removes it.
  toggle_two_way(m, student, f);
  CHECK_FALSE(find_field(m.objects[teacher.index], "pupil").has_value());
}

TEST_CASE("add_method strips parentheses and keeps case") {
  auto m = reify::testing::restaurant_model();
  const auto customer = *find_object(m, "customer");
  const auto id = add_method(m, customer, "buyPet()", Provenance::kUserAdded);
  CHECK(m.objects[customer.index].methods[id.index].name == "buyPet");
  CHECK(code_of([&] { add_method(m, customer, "makeReservation", Provenance::kUserAdded); }) ==
        ErrorCode::kDuplicateName);
  CHECK(code_of([&] { add_method(m, customer, "()", Provenance::kUserAdded); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("edit_field renames, retypes and relinks") {
  auto m = fresh();
  const auto a = add_object(m, "a", Provenance::kUserAdded);
  const auto b = add_object(m, "b", Provenance::kUserAdded);
  const auto f = add_field(m, a, "link", FieldType::object_ref("b"), Multiplicity::kOne, Provenance::kUserAdded);
  toggle_two_way(m, a, f);
  edit_field(m, a, f, FieldEdit{.name = "partner", .type = std::nullopt, .multiplicity = Multiplicity::kMany});
  CHECK(m.objects[b.index].fields[0].reverse_of == FieldRef{"a", "partner"});
  CHECK(m.objects[a.index].fields[f.index].multiplicity == Multiplicity::kMany);
  CHECK(code_of([&] {
          edit_field(m, a, f, FieldEdit{.name = std::nullopt, .type = FieldType::object_ref("zzz"), .multiplicity = {}});
        }) == ErrorCode::kUnknownTypeTarget);
  CHECK(validate(m).empty());
}

TEST_CASE("component_count examples") {
  auto m = fresh();
  CHECK(component_count(m) == 0);
  const auto o = add_object(m, "o", Provenance::kUserAdded);
  add_field(m, o, "x", FieldType::primitive(Primitive::kInt), Multiplicity::kOne, Provenance::kUserAdded);
  add_field(m, o, "y", FieldType::primitive(Primitive::kInt), Multiplicity::kOne, Provenance::kUserAdded);
  add_method(m, o, "go", Provenance::kUserAdded);
  CHECK(component_count(m) == 4);
  CHECK(component_count(reify::testing::restaurant_model()) == 21);
}

TEST_CASE("validate on the restaurant model is clean") { CHECK(validate(reify::testing::restaurant_model()).empty()); }

TEST_CASE("validate reports hand-built violations") {
  ObjectModel m;
  m.objects.push_back({"waiter", {}, {}, true, Provenance::kSynthesized});
  ObjectDef table{"table", {}, {}, false, Provenance::kUserAdded};
  table.fields.push_back({"server", FieldType::object_ref("waiter"), Multiplicity::kOne, false,
                          Provenance::kUserAdded, std::nullopt});
  table.fields.push_back({"server", FieldType::primitive(Primitive::kString), Multiplicity::kOne, false,
                          Provenance::kUserAdded, std::nullopt});
  table.fields.push_back({"ghost", FieldType::object_ref("nobody"), Multiplicity::kOne, false,
                          Provenance::kUserAdded, FieldRef{"x", "y"}});
  table.methods.push_back({"seat", false, Provenance::kUserAdded});
  table.methods.push_back({"seat", false, Provenance::kUserAdded});
  m.objects.push_back(table);
  m.objects.push_back(table);
  m.objects.back().fields.clear();
  m.objects.back().methods.clear();

  std::vector<ViolationKind> kinds;
  for (const auto& v : validate(m)) kinds.push_back(v.kind);
  CHECK(kinds == std::vector<ViolationKind>{ViolationKind::kDanglingReference, ViolationKind::kDuplicateFieldName,
                                            ViolationKind::kUnknownTypeTarget, ViolationKind::kOrphanedReverse,
                                            ViolationKind::kDuplicateMethodName,
                                            ViolationKind::kDuplicateObjectName});
}
