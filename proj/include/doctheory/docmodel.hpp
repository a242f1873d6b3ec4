#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "doctheory/ast.hpp"
#include "doctheory/result.hpp"
#include "doctheory/value.hpp"

// Data conventions:
//   field     <v1, ..., vn, name>          head = field name, tail = value list
//   document  <field, ...>
//   tuple     <sit, form, doc, id>         head = id (a Nat)
//   model     <tuple, ...>                 newest tuple at the head
//   situation <instruction, ...>           last executed instruction at the head
//   CreateDoc <form, CreateDoc>
//   SetField  <value, field, id, SetField>
//   trans     <params, id, transName>

namespace doctheory {

inline const Value& create_doc_tag() {
  static const Value v = Value::atom("CreateDoc");
  return v;
}

inline const Value& set_field_tag() {
  static const Value v = Value::atom("SetField");
  return v;
}

bool card_holds(Cardinality card, const Value& value_list);

/// Field names with their cardinalities; backs the Field(x) predicate.
struct FieldSchema {
  std::vector<std::pair<std::string, Cardinality>> fields;

  std::optional<Cardinality> cardinality(std::string_view name) const;
  /// head(f) is a declared field name and tail(f) satisfies its cardinality.
  bool check_field(const Value& f) const;
};

Value make_field(const Value& value_list, const Value& name);
Value make_tuple(const Value& situation, const Value& form, const Value& document, const Value& id);

/// Greatest tuple ID in the model, nat(0) for the empty model.
Result<Value> get_last_doc_id(const Value& model);
/// Newest tuple carrying `id`, or fault.
Result<Value> get_doc_by_id(const Value& id, const Value& model);
/// Value list of the named field in the newest version of the document, or
/// fault when the document or the field is absent.
Result<Value> get_field_value(const Value& id, const Value& field_name, const Value& model);
/// Splits a document into <list1, list2> with conc(list1, list2) = document
/// and head(list1) the named field; fault when there is no such field.
Result<Value> find_field_position(const Value& document, const Value& field_name);
/// Form name of a tuple; fault for fault.
Result<Value> form_of(const Value& tuple);
/// Situation of the newest tuple; the empty list for the empty model.
Result<Value> current_situation(const Value& model);
/// Elements in reverse order.
Result<Value> rev(const Value& list);

/// The document with the named field's value replaced in place; fault when
/// the field is absent.
Result<Value> replace_field_value(const Value& document, const Value& field_name, const Value& value_list);

}  // namespace doctheory
