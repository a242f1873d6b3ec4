#include "doctheory/eval.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace doctheory {

namespace {

// Internal unwinding only; converted to EvalError at the public boundary.
struct Failure {
  std::string message;
};

[[noreturn]] void fail(std::string message) { throw Failure{std::move(message)}; }

const Value& need_list(const Value& v, const char* where) {
  if (!v.is_list()) fail(std::string(where) + ": expected a list, got " + to_string(v));
  return v;
}

Value unwrap(Result<Value> r) {
  if (!r) fail(r.error().message);
  return std::move(r).value();
}

Value call(Fn fn, std::span<const Value> a, const EvalContext& ctx) {
  switch (fn) {
    case Fn::Head:
      return need_list(a[0], "head").head();
    case Fn::Tail:
      return need_list(a[0], "tail").tail();
    case Fn::Cons:
      return need_list(a[0], "cons").cons(a[1]);
    case Fn::Conc:
      return need_list(a[0], "conc").conc(need_list(a[1], "conc"));
    case Fn::Len:
      return len(need_list(a[0], "len"));
    case Fn::Index:
      return index(a[0], a[1]);
    case Fn::Add:
      return add(a[0], a[1], ctx.numeric);
    case Fn::Min:
      return min_list(a[0], ctx.numeric);
    case Fn::Max:
      return max_list(a[0], ctx.numeric);
    case Fn::Rev:
      return unwrap(rev(a[0]));
    case Fn::LastDocId:
      return unwrap(get_last_doc_id(a[0]));
    case Fn::DocById:
      return unwrap(get_doc_by_id(a[0], a[1]));
    case Fn::FieldValue:
      return unwrap(get_field_value(a[0], a[1], a[2]));
    case Fn::FindField:
      return unwrap(find_field_position(a[0], a[1]));
    case Fn::FormOf:
      return unwrap(form_of(a[0]));
    case Fn::Situation:
      return unwrap(current_situation(a[0]));
  }
  fail("unknown function");
}

class Evaluator {
 public:
  Evaluator(const Env& env, const EvalContext& ctx) : env_(env), ctx_(ctx) {}

  Value term(const Term& t) {
    return std::visit([this](const auto& n) { return eval(n); }, t.node);
  }

  bool formula(const Formula& f) {
    return std::visit([this](const auto& n) { return eval(n); }, f.node);
  }

 private:
  const Env& env_;
  const EvalContext& ctx_;
  std::vector<std::pair<std::string_view, Value>> scope_;

  class Bind {
   public:
    Bind(Evaluator& e, std::string_view name, Value v) : e_(e) { e_.scope_.emplace_back(name, std::move(v)); }
    ~Bind() { e_.scope_.pop_back(); }
    void set(Value v) { e_.scope_.back().second = std::move(v); }
    Bind(const Bind&) = delete;
    Bind& operator=(const Bind&) = delete;

   private:
    Evaluator& e_;
  };

  const Value& lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    auto it = env_.find(name);
    if (it == env_.end()) fail("unbound variable '" + name + "'");
    return it->second;
  }

  Value eval(const term::Const& c) { return c.value; }
  Value eval(const term::Var& v) { return lookup(v.name); }

  Value eval(const term::ListLit& l) {
    Value out;
    for (const auto& item : l.items) out = out.cons(term(item));
    return out;
  }

  Value eval(const term::Call& c) {
    std::vector<Value> args;
    args.reserve(c.args.size());
    for (const auto& a : c.args) args.push_back(term(a));
    return call(c.fn, args, ctx_);
  }

  Value eval(const term::Cond& c) {
    for (const auto& b : c.branches) {
      if (formula(*b.guard)) return term(*b.value);
    }
    return term(*c.otherwise);
  }

  Value eval(const term::BSearch& b) {
    const Value over = term(*b.over);
    need_list(over, "bsearch");
    std::optional<Value> hit;
    Bind bind(*this, b.var, Value());
    for (const auto& e : over.elements()) {
      bind.set(e);
      if (formula(*b.condition)) hit = e;
    }
    return hit ? *hit : over;
  }

  Value eval(const term::Rec& r) {
    Value acc = term(*r.base);
    const Value over = term(*r.over);
    need_list(over, "rec");
    Bind acc_bind(*this, r.acc, acc);
    Bind elem_bind(*this, r.elem, Value());
    for (const auto& e : over.elements()) {
      elem_bind.set(e);
      acc = term(*r.step);
      // The accumulator binding sits below the element binding.
      scope_[scope_.size() - 2].second = acc;
    }
    return acc;
  }

  bool eval(const formula::Truth& t) { return t.value; }

  bool eval(const formula::Compare& c) {
    const Value lhs = term(*c.lhs);
    const Value rhs = term(*c.rhs);
    switch (c.op) {
      case CmpOp::Eq:
        return lhs == rhs;
      case CmpOp::Less:
        return compare(lhs, rhs, ctx_.numeric) == Ordering::Less;
      case CmpOp::Member: {
        need_list(rhs, "in");
        for (Value rest = rhs; rest.size() > 0; rest = rest.tail()) {
          if (rest.head() == lhs) return true;
        }
        return false;
      }
      case CmpOp::Prefix: {
        need_list(lhs, "prefix");
        need_list(rhs, "prefix");
        if (lhs.size() > rhs.size()) return false;
        Value cut = rhs;
        while (cut.size() > lhs.size()) cut = cut.tail();
        return cut == lhs;
      }
    }
    return false;
  }

  bool eval(const formula::Not& n) { return !formula(*n.body); }

  bool eval(const formula::Binary& b) {
    switch (b.op) {
      case BoolOp::And:
        return formula(*b.lhs) && formula(*b.rhs);
      case BoolOp::Or:
        return formula(*b.lhs) || formula(*b.rhs);
      case BoolOp::Implies:
        return !formula(*b.lhs) || formula(*b.rhs);
    }
    return false;
  }

  bool eval(const formula::Bounded& q) {
    const Value over = term(*q.over);
    need_list(over, q.bound == BoundKind::Member ? "bounded quantifier over elements" : "bounded quantifier over prefixes");
    std::vector<Value> range;
    if (q.bound == BoundKind::Member) {
      range = over.elements();
    } else {
      range.reserve(over.size() + 1);
      for (Value p = over;; p = p.tail()) {
        range.push_back(p);
        if (p.size() == 0) break;
      }
      std::reverse(range.begin(), range.end());
    }
    const bool exists = q.quantifier == Quantifier::Exists;
    Bind bind(*this, q.var, Value());
    for (const auto& v : range) {
      bind.set(v);
      if (formula(*q.body) == exists) return exists;
    }
    return !exists;
  }

  bool eval(const formula::Pred& p) {
    const Value v = term(*p.arg);
    switch (p.kind) {
      case PredKind::Nat:
        return v.is_nat();
      case PredKind::Real:
        return is_real(v, ctx_.numeric);
      case PredKind::Field:
        if (ctx_.fields == nullptr) fail("is_field needs a field schema");
        return ctx_.fields->check_field(v);
      case PredKind::Card:
        return card_holds(p.card, v);
    }
    return false;
  }
};

}  // namespace

Result<Value> apply_fn(Fn fn, std::span<const Value> args, const EvalContext& ctx) {
  if (static_cast<int>(args.size()) != fn_info(fn).arity) {
    return EvalError{std::string(fn_info(fn).name) + ": wrong number of arguments"};
  }
  try {
    return call(fn, args, ctx);
  } catch (const Failure& f) {
    return EvalError{f.message};
  }
}

Result<Value> eval_term(const Term& t, const Env& env, const EvalContext& ctx) {
  try {
    return Evaluator(env, ctx).term(t);
  } catch (const Failure& f) {
    return EvalError{f.message};
  } catch (const std::exception& e) {
    return EvalError{e.what()};
  }
}

Result<bool> eval_formula(const Formula& f, const Env& env, const EvalContext& ctx) {
  try {
    return Evaluator(env, ctx).formula(f);
  } catch (const Failure& e) {
    return EvalError{e.message};
  } catch (const std::exception& e) {
    return EvalError{e.what()};
  }
}

Result<Value> normalize(const Term& t, const EvalContext& ctx) {
  auto vars = free_vars(t);
  if (!vars.empty()) return EvalError{"normalize: term has free variable '" + vars.front() + "'"};
  return eval_term(t, Env{}, ctx);
}

}  // namespace doctheory
