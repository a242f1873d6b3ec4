#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "doctheory/ast.hpp"
#include "doctheory/docmodel.hpp"
#include "doctheory/eval.hpp"
#include "doctheory/numerics.hpp"
#include "doctheory/result.hpp"
#include "doctheory/value.hpp"

namespace doctheory {

/// Position in a theory source. Never part of structural equality.
struct SourceLoc {
  int line = 0;
  int column = 0;
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

struct Diagnostic {
  SourceLoc loc;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d, std::string_view file = {});

struct FieldDecl {
  std::string name;
  Cardinality card = Cardinality::AtMostOne;
  bool operator==(const FieldDecl&) const = default;
};

struct BlankField {
  std::string field;
  Value default_value;  // the value list, e.g. <Open>
  bool operator==(const BlankField&) const = default;
};

/// A form with the fields of its blank document. No fields means the blank
/// document is the empty list.
struct FormDecl {
  std::string name;
  std::vector<BlankField> blank;
  SourceLoc loc;
  bool operator==(const FormDecl&) const = default;
};

/// Selects IDs of documents of a given form whose newest version satisfies
/// `condition`. `var` is bound to the candidate tuple; `params` and `model`
/// are also in scope.
struct FilterDef {
  std::string name;
  std::string var;
  Formula condition;
  SourceLoc loc;
  bool operator==(const FilterDef&) const = default;
};

namespace instr {

/// <<value, field, target, SetField>>. Without a target the rule's own docID
/// is used.
struct SetField {
  std::string field;
  std::optional<Term> target;
  Term value;
  bool operator==(const SetField&) const = default;
};

/// <<form, CreateDoc>>
struct Create {
  std::string form;
  bool operator==(const Create&) const = default;
};

/// <<params, target, name>>
struct Transaction {
  std::string name;
  Term target;
  Term params;
  bool operator==(const Transaction&) const = default;
};

/// One emitted instruction per ID selected by `filter` over `form`, in
/// filter order. The body is either a transaction on the selected ID or a
/// document creation.
struct FilterLoop {
  std::string filter;
  std::string form;
  Term filter_params;
  struct EmitTrans {
    std::string name;
    Term params;
    bool operator==(const EmitTrans&) const = default;
  };
  struct EmitCreate {
    std::string form;
    bool operator==(const EmitCreate&) const = default;
  };
  std::variant<EmitTrans, EmitCreate> body;
  bool operator==(const FilterLoop&) const = default;
};

}  // namespace instr

using InstructionTerm = std::variant<instr::SetField, instr::Create, instr::Transaction, instr::FilterLoop>;

enum class DaemonKind { SetField, ExecTrans };

/// One [condition, queue extension] branch of a daemon. The condition is
/// "form of docID = form, event name = trigger, guard". When `clears_queue`
/// is set the branch replaces the queue with the empty list instead of
/// extending it.
struct DaemonRule {
  DaemonKind kind = DaemonKind::ExecTrans;
  std::string form;
  std::string trigger;
  Formula guard = make_truth(true);
  bool clears_queue = false;
  std::vector<InstructionTerm> extension;
  SourceLoc loc;
  bool operator==(const DaemonRule&) const = default;
};

/// What a daemon does when no rule matches.
enum class DefaultBranch { KeepQueue, SkipQueue };

struct Theory {
  std::string name = "theory";
  NumericConfig precision;
  std::vector<FieldDecl> fields;
  std::vector<FormDecl> forms;
  std::vector<std::string> transactions;
  std::vector<FilterDef> filters;
  std::vector<DaemonRule> set_rules;
  std::vector<DaemonRule> trans_rules;
  DefaultBranch set_default = DefaultBranch::KeepQueue;
  DefaultBranch trans_default = DefaultBranch::KeepQueue;

  bool operator==(const Theory&) const = default;

  const FieldDecl* find_field(std::string_view n) const;
  const FormDecl* find_form(std::string_view n) const;
  const FilterDef* find_filter(std::string_view n) const;
  bool has_transaction(std::string_view n) const;

  FieldSchema schema() const;
  EvalContext context() const;
  const std::vector<DaemonRule>& rules(DaemonKind kind) const {
    return kind == DaemonKind::SetField ? set_rules : trans_rules;
  }
};

/// Variables a rule guard and its instruction terms may mention.
std::vector<std::string> rule_scope(DaemonKind kind);

/// Structural and scoping checks; empty when the theory is well formed.
std::vector<Diagnostic> validate_theory(const Theory& th);

/// Blank document of a form, or fault for an unknown form.
Value blank(const Value& form_name, const Theory& th);

bool check_field(const Value& f, const Theory& th);

/// IDs of documents of `form` whose newest version satisfies the filter,
/// newest first, each ID once.
Result<Value> eval_filter(const FilterDef& filter, const Value& form, const Value& params, const Value& model,
                          const Theory& th);
Result<Value> eval_filter(std::string_view filter_name, const Value& form, const Value& params, const Value& model,
                          const Theory& th);

}  // namespace doctheory
