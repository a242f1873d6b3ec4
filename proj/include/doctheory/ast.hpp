#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "doctheory/value.hpp"

namespace doctheory {

/// Heap-allocated member with value semantics and deep equality, used to
/// build the recursive term/formula variants.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}
  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  const T& get() const { return *ptr_; }
  friend bool operator==(const Box& a, const Box& b) { return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_; }

 private:
  std::shared_ptr<const T> ptr_;
};

struct Term;
struct Formula;

/// Built-in list, numeric and document functions.
enum class Fn {
  Head,
  Tail,
  Cons,
  Conc,
  Len,
  Index,
  Add,
  Min,
  Max,
  Rev,
  LastDocId,
  DocById,
  FieldValue,
  FindField,
  FormOf,
  Situation,
};

struct FnInfo {
  Fn fn;
  const char* name;
  int arity;
  /// Part of the document-term fragment allowed in theory guards.
  bool document_term;
};

const FnInfo& fn_info(Fn fn);
/// Looks up a function by its surface name.
const FnInfo* find_fn(std::string_view name);

namespace term {

struct Const {
  Value value;
  bool operator==(const Const&) const = default;
};

struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};

/// ⟨t1, ..., tn⟩, shorthand for cons(...cons(⟨ ⟩, t1)..., tn).
struct ListLit {
  std::vector<Term> items;
  bool operator==(const ListLit&) const;
};

struct Call {
  Fn fn;
  std::vector<Term> args;
  bool operator==(const Call&) const;
};

struct CondBranch;

/// First branch whose guard holds, else `otherwise`.
struct Cond {
  std::vector<CondBranch> branches;
  Box<Term> otherwise;
  bool operator==(const Cond&) const;
};

/// Last element `var` of `over` satisfying `condition`, else `over` itself.
struct BSearch {
  std::string var;
  Box<Term> over;
  Box<Formula> condition;
  bool operator==(const BSearch&) const = default;
};

/// Bounded fold: acc starts at `base`, then acc := step(acc, elem) for each
/// element of `over`, front to back.
struct Rec {
  Box<Term> base;
  Box<Term> over;
  std::string acc;
  std::string elem;
  Box<Term> step;
  bool operator==(const Rec&) const = default;
};

}  // namespace term

struct Term {
  std::variant<term::Const, term::Var, term::ListLit, term::Call, term::Cond, term::BSearch, term::Rec> node;
  bool operator==(const Term&) const = default;
};

namespace term {
struct CondBranch {
  Box<Formula> guard;
  Box<Term> value;
  bool operator==(const CondBranch&) const = default;
};
}  // namespace term

enum class CmpOp { Eq, Less, Member, Prefix };
enum class BoolOp { And, Or, Implies };
enum class Quantifier { Forall, Exists };
enum class BoundKind { Member, Prefix };
enum class Cardinality { Empty, AtMostOne, ExactlyOne, AtLeastOne };
enum class PredKind { Nat, Real, Field, Card };

namespace formula {

struct Truth {
  bool value;
  bool operator==(const Truth&) const = default;
};

struct Compare {
  CmpOp op;
  Box<Term> lhs;
  Box<Term> rhs;
  bool operator==(const Compare&) const = default;
};

struct Not {
  Box<Formula> body;
  bool operator==(const Not&) const = default;
};

struct Binary {
  BoolOp op;
  Box<Formula> lhs;
  Box<Formula> rhs;
  bool operator==(const Binary&) const = default;
};

struct Bounded {
  Quantifier quantifier;
  std::string var;
  BoundKind bound;
  Box<Term> over;
  Box<Formula> body;
  bool operator==(const Bounded&) const = default;
};

struct Pred {
  PredKind kind;
  Cardinality card = Cardinality::Empty;  // only for PredKind::Card
  Box<Term> arg;
  bool operator==(const Pred&) const = default;
};

}  // namespace formula

struct Formula {
  std::variant<formula::Truth, formula::Compare, formula::Not, formula::Binary, formula::Bounded, formula::Pred> node;
  bool operator==(const Formula&) const = default;
};

// Builders, mostly for tests and generators.
Term make_const(Value v);
Term make_var(std::string name);
/// Folds to a constant when every item is a constant.
Term make_list(std::vector<Term> items);
Term make_call(Fn fn, std::vector<Term> args);
Term make_cond(std::vector<std::pair<Formula, Term>> branches, Term otherwise);
Term make_bsearch(std::string var, Term over, Formula condition);
Term make_rec(Term base, Term over, std::string acc, std::string elem, Term step);

Formula make_truth(bool value);
Formula make_cmp(CmpOp op, Term lhs, Term rhs);
Formula make_not(Formula f);
Formula make_and(Formula a, Formula b);
Formula make_or(Formula a, Formula b);
Formula make_implies(Formula a, Formula b);
Formula make_bounded(Quantifier q, std::string var, BoundKind bound, Term over, Formula body);
Formula make_pred(PredKind kind, Term arg, Cardinality card = Cardinality::Empty);

/// Free variables, in order of first occurrence.
std::vector<std::string> free_vars(const Term& t);
std::vector<std::string> free_vars(const Formula& f);

/// True when the term uses none of cond/bsearch/rec, i.e. it is built from
/// list functions and the document functions only.
bool is_document_term(const Term& t);
/// Quantifier-free Boolean combination of `=` and `<` over document terms.
bool is_guard_formula(const Formula& f);

/// Surface syntax of the theory DSL.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);
const char* to_string(Cardinality c);

}  // namespace doctheory
