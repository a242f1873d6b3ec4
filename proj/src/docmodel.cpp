#include "doctheory/docmodel.hpp"

#include <algorithm>
#include <array>

namespace doctheory {

namespace {

EvalError malformed(const char* what, const Value& v) {
  return EvalError{std::string(what) + ": " + to_string(v, {.nat_sugar = true})};
}

bool is_tuple(const Value& t) { return t.is_list() && t.size() == 4; }

}  // namespace

bool card_holds(Cardinality card, const Value& value_list) {
  if (!value_list.is_list()) return false;
  const auto n = value_list.size();
  switch (card) {
    case Cardinality::Empty:
      return n == 0;
    case Cardinality::AtMostOne:
      return n <= 1;
    case Cardinality::ExactlyOne:
      return n == 1;
    case Cardinality::AtLeastOne:
      return n >= 1;
  }
  return false;
}

std::optional<Cardinality> FieldSchema::cardinality(std::string_view name) const {
  for (const auto& [n, c] : fields) {
    if (n == name) return c;
  }
  return std::nullopt;
}

bool FieldSchema::check_field(const Value& f) const {
  if (!f.is_list() || f.size() == 0) return false;
  const Value name = f.head();
  if (!name.is_atom()) return false;
  auto card = cardinality(name.atom_name());
  return card && card_holds(*card, f.tail());
}

Value make_field(const Value& value_list, const Value& name) { return value_list.cons(name); }

Value make_tuple(const Value& situation, const Value& form, const Value& document, const Value& id) {
  return Value::list({situation, form, document, id});
}

Result<Value> get_last_doc_id(const Value& model) {
  if (!model.is_list()) return malformed("model is not a list", model);
  // Models grow by one tuple per step, so the answer for a recent prefix
  // is usually remembered. Entries hold their model, keeping identities live.
  struct Memo {
    Value model;
    Value best;
  };
  thread_local std::array<Memo, 16> memo;
  thread_local std::size_t next = 0;

  Value best = Value::nat(0);
  for (Value rest = model; rest.size() > 0; rest = rest.tail()) {
    const auto hit = std::find_if(memo.begin(), memo.end(),
                                  [&](const Memo& m) { return m.model.identity() == rest.identity(); });
    if (hit != memo.end()) {
      if (hit->best.size() > best.size()) best = hit->best;
      break;
    }
    const Value t = rest.head();
    if (!is_tuple(t)) return malformed("malformed document tuple", t);
    const Value id = t.head();
    if (!id.is_nat()) return malformed("document ID is not a natural number", id);
    if (id.size() > best.size()) best = id;
  }
  memo[next] = Memo{model, best};
  next = (next + 1) % memo.size();
  return best;
}

Result<Value> get_doc_by_id(const Value& id, const Value& model) {
  if (!model.is_list()) return malformed("model is not a list", model);
  // Newest first: walk from the head.
  for (Value rest = model; rest.size() > 0; rest = rest.tail()) {
    const Value t = rest.head();
    if (!is_tuple(t)) return malformed("malformed document tuple", t);
    if (t.head() == id) return t;
  }
  return fault();
}

Result<Value> get_field_value(const Value& id, const Value& field_name, const Value& model) {
  auto tuple = get_doc_by_id(id, model);
  if (!tuple) return tuple;
  if (is_fault(*tuple)) return fault();
  const Value document = tuple->at(2);
  if (!document.is_list()) return malformed("document is not a list", document);
  for (Value rest = document; rest.size() > 0; rest = rest.tail()) {
    const Value f = rest.head();
    if (f.is_list() && f.size() > 0 && f.head() == field_name) return f.tail();
  }
  return fault();
}

Result<Value> find_field_position(const Value& document, const Value& field_name) {
  if (is_fault(document)) return fault();
  if (!document.is_list()) return malformed("document is not a list", document);
  Value front;
  Value back;
  bool found = false;
  for (const auto& f : document.elements()) {
    if (found) {
      back = back.cons(f);
      continue;
    }
    front = front.cons(f);
    found = f.is_list() && f.size() > 0 && f.head() == field_name;
  }
  if (!found) return fault();
  return Value::list({front, back});
}

Result<Value> form_of(const Value& tuple) {
  if (is_fault(tuple)) return fault();
  if (!is_tuple(tuple)) return malformed("malformed document tuple", tuple);
  return tuple.at(1);
}

Result<Value> current_situation(const Value& model) {
  if (!model.is_list()) return malformed("model is not a list", model);
  if (model.size() == 0) return Value();
  const Value t = model.head();
  if (!is_tuple(t)) return malformed("malformed document tuple", t);
  return t.at(0);
}

Result<Value> rev(const Value& list) {
  if (!list.is_list()) return malformed("rev of an urelement", list);
  Value out;
  for (Value rest = list; rest.size() > 0; rest = rest.tail()) out = out.cons(rest.head());
  return out;
}

Result<Value> replace_field_value(const Value& document, const Value& field_name, const Value& value_list) {
  auto parts = find_field_position(document, field_name);
  if (!parts || is_fault(*parts)) return parts;
  const Value front = parts->at(0);
  const Value back = parts->at(1);
  return front.tail().cons(make_field(value_list, field_name)).conc(back);
}

}  // namespace doctheory
