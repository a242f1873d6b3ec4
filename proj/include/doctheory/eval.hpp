#pragma once

#include <map>
#include <span>
#include <string>

#include "doctheory/ast.hpp"
#include "doctheory/docmodel.hpp"
#include "doctheory/numerics.hpp"
#include "doctheory/result.hpp"
#include "doctheory/value.hpp"

namespace doctheory {

using Env = std::map<std::string, Value, std::less<>>;

struct EvalContext {
  NumericConfig numeric;
  /// Needed only by the is_field predicate.
  const FieldSchema* fields = nullptr;
};

/// Applies a built-in function to already evaluated arguments.
Result<Value> apply_fn(Fn fn, std::span<const Value> args, const EvalContext& ctx = {});

Result<Value> eval_term(const Term& t, const Env& env, const EvalContext& ctx = {});
Result<bool> eval_formula(const Formula& f, const Env& env, const EvalContext& ctx = {});

/// Constant value of a variable-free term.
Result<Value> normalize(const Term& t, const EvalContext& ctx = {});

}  // namespace doctheory
