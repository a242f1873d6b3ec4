#include "doctheory/ast.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace doctheory {

namespace {

constexpr std::array<FnInfo, 16> kFns{{
    {Fn::Head, "head", 1, true},
    {Fn::Tail, "tail", 1, true},
    {Fn::Cons, "cons", 2, true},
    {Fn::Conc, "conc", 2, true},
    {Fn::Len, "len", 1, false},
    {Fn::Index, "index", 2, true},
    {Fn::Add, "add", 2, true},
    {Fn::Min, "min", 1, true},
    {Fn::Max, "max", 1, true},
    {Fn::Rev, "rev", 1, false},
    {Fn::LastDocId, "last_doc_id", 1, true},
    {Fn::DocById, "doc_by_id", 2, true},
    {Fn::FieldValue, "field_value", 3, true},
    {Fn::FindField, "find_field", 2, false},
    {Fn::FormOf, "form_of", 1, true},
    {Fn::Situation, "situation", 1, false},
}};

}  // namespace

const FnInfo& fn_info(Fn fn) {
  for (const auto& info : kFns) {
    if (info.fn == fn) return info;
  }
  throw std::logic_error("unknown function");
}

const FnInfo* find_fn(std::string_view name) {
  for (const auto& info : kFns) {
    if (name == info.name) return &info;
  }
  return nullptr;
}

namespace term {
bool ListLit::operator==(const ListLit& o) const { return items == o.items; }
bool Call::operator==(const Call& o) const { return fn == o.fn && args == o.args; }
bool Cond::operator==(const Cond& o) const { return branches == o.branches && otherwise == o.otherwise; }
}  // namespace term

Term make_const(Value v) { return Term{term::Const{std::move(v)}}; }
Term make_var(std::string name) { return Term{term::Var{std::move(name)}}; }
Term make_list(std::vector<Term> items) {
  // A literal made only of constants is itself a constant.
  if (std::all_of(items.begin(), items.end(), [](const Term& t) { return std::holds_alternative<term::Const>(t.node); })) {
    Value v;
    for (const auto& t : items) v = v.cons(std::get<term::Const>(t.node).value);
    return make_const(std::move(v));
  }
  return Term{term::ListLit{std::move(items)}};
}
Term make_call(Fn fn, std::vector<Term> args) { return Term{term::Call{fn, std::move(args)}}; }

Term make_cond(std::vector<std::pair<Formula, Term>> branches, Term otherwise) {
  term::Cond c{{}, std::move(otherwise)};
  for (auto& [g, v] : branches) c.branches.push_back(term::CondBranch{std::move(g), std::move(v)});
  return Term{std::move(c)};
}

Term make_bsearch(std::string var, Term over, Formula condition) {
  return Term{term::BSearch{std::move(var), std::move(over), std::move(condition)}};
}

Term make_rec(Term base, Term over, std::string acc, std::string elem, Term step) {
  return Term{term::Rec{std::move(base), std::move(over), std::move(acc), std::move(elem), std::move(step)}};
}

Formula make_truth(bool value) { return Formula{formula::Truth{value}}; }
Formula make_cmp(CmpOp op, Term lhs, Term rhs) { return Formula{formula::Compare{op, std::move(lhs), std::move(rhs)}}; }
Formula make_not(Formula f) { return Formula{formula::Not{std::move(f)}}; }
Formula make_and(Formula a, Formula b) { return Formula{formula::Binary{BoolOp::And, std::move(a), std::move(b)}}; }
Formula make_or(Formula a, Formula b) { return Formula{formula::Binary{BoolOp::Or, std::move(a), std::move(b)}}; }
Formula make_implies(Formula a, Formula b) {
  return Formula{formula::Binary{BoolOp::Implies, std::move(a), std::move(b)}};
}
Formula make_bounded(Quantifier q, std::string var, BoundKind bound, Term over, Formula body) {
  return Formula{formula::Bounded{q, std::move(var), bound, std::move(over), std::move(body)}};
}
Formula make_pred(PredKind kind, Term arg, Cardinality card) {
  return Formula{formula::Pred{kind, card, std::move(arg)}};
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

class FreeVars {
 public:
  std::vector<std::string> out;

  void term(const Term& t) {
    std::visit([this](const auto& n) { visit(n); }, t.node);
  }
  void formula(const Formula& f) {
    std::visit([this](const auto& n) { visit(n); }, f.node);
  }

 private:
  std::vector<std::string> bound_;

  void use(const std::string& name) {
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return;
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }

  void visit(const term::Const&) {}
  void visit(const term::Var& v) { use(v.name); }
  void visit(const term::ListLit& l) {
    for (const auto& i : l.items) term(i);
  }
  void visit(const term::Call& c) {
    for (const auto& a : c.args) term(a);
  }
  void visit(const term::Cond& c) {
    for (const auto& b : c.branches) {
      formula(*b.guard);
      term(*b.value);
    }
    term(*c.otherwise);
  }
  void visit(const term::BSearch& b) {
    term(*b.over);
    bound_.push_back(b.var);
    formula(*b.condition);
    bound_.pop_back();
  }
  void visit(const term::Rec& r) {
    term(*r.base);
    term(*r.over);
    bound_.push_back(r.acc);
    bound_.push_back(r.elem);
    term(*r.step);
    bound_.resize(bound_.size() - 2);
  }

  void visit(const formula::Truth&) {}
  void visit(const formula::Compare& c) {
    term(*c.lhs);
    term(*c.rhs);
  }
  void visit(const formula::Not& n) { formula(*n.body); }
  void visit(const formula::Binary& b) {
    formula(*b.lhs);
    formula(*b.rhs);
  }
  void visit(const formula::Bounded& q) {
    term(*q.over);
    bound_.push_back(q.var);
    formula(*q.body);
    bound_.pop_back();
  }
  void visit(const formula::Pred& p) { term(*p.arg); }
};

}  // namespace

std::vector<std::string> free_vars(const Term& t) {
  FreeVars fv;
  fv.term(t);
  return fv.out;
}

std::vector<std::string> free_vars(const Formula& f) {
  FreeVars fv;
  fv.formula(f);
  return fv.out;
}

bool is_document_term(const Term& t) {
  struct V {
    bool operator()(const term::Const&) const { return true; }
    bool operator()(const term::Var&) const { return true; }
    bool operator()(const term::ListLit& l) const {
      return std::all_of(l.items.begin(), l.items.end(), [](const Term& i) { return is_document_term(i); });
    }
    bool operator()(const term::Call& c) const {
      if (!fn_info(c.fn).document_term) return false;
      return std::all_of(c.args.begin(), c.args.end(), [](const Term& a) { return is_document_term(a); });
    }
    bool operator()(const term::Cond&) const { return false; }
    bool operator()(const term::BSearch&) const { return false; }
    bool operator()(const term::Rec&) const { return false; }
  };
  return std::visit(V{}, t.node);
}

bool is_guard_formula(const Formula& f) {
  struct V {
    bool operator()(const formula::Truth&) const { return true; }
    bool operator()(const formula::Compare& c) const {
      return (c.op == CmpOp::Eq || c.op == CmpOp::Less) && is_document_term(*c.lhs) && is_document_term(*c.rhs);
    }
    bool operator()(const formula::Not& n) const { return is_guard_formula(*n.body); }
    bool operator()(const formula::Binary& b) const { return is_guard_formula(*b.lhs) && is_guard_formula(*b.rhs); }
    bool operator()(const formula::Bounded&) const { return false; }
    bool operator()(const formula::Pred&) const { return false; }
  };
  return std::visit(V{}, f.node);
}

// ---------------------------------------------------------------------------
// Printing

const char* to_string(Cardinality c) {
  switch (c) {
    case Cardinality::Empty:
      return "empty";
    case Cardinality::AtMostOne:
      return "?";
    case Cardinality::ExactlyOne:
      return "!";
    case Cardinality::AtLeastOne:
      return "+";
  }
  return "?";
}

namespace {

void print(const Term& t, std::string& out);
void print(const Formula& f, std::string& out);

void print_args(const std::vector<Term>& args, std::string& out) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    print(args[i], out);
  }
}

void print(const Term& t, std::string& out) {
  struct V {
    std::string& out;
    void operator()(const term::Const& c) const { out += to_string(c.value, {.nat_sugar = true}); }
    void operator()(const term::Var& v) const { out += v.name; }
    void operator()(const term::ListLit& l) const {
      out += "<";
      print_args(l.items, out);
      out += ">";
    }
    void operator()(const term::Call& c) const {
      out += fn_info(c.fn).name;
      out += "(";
      print_args(c.args, out);
      out += ")";
    }
    void operator()(const term::Cond& c) const {
      out += "cond { ";
      for (const auto& b : c.branches) {
        print(*b.guard, out);
        out += " => ";
        print(*b.value, out);
        out += "; ";
      }
      out += "else => ";
      print(*c.otherwise, out);
      out += " }";
    }
    void operator()(const term::BSearch& b) const {
      out += "bsearch(" + b.var + " in ";
      print(*b.over, out);
      out += " | ";
      print(*b.condition, out);
      out += ")";
    }
    void operator()(const term::Rec& r) const {
      out += "rec(";
      print(*r.base, out);
      out += ", ";
      print(*r.over, out);
      out += ", " + r.acc + ", " + r.elem + " => ";
      print(*r.step, out);
      out += ")";
    }
  };
  std::visit(V{out}, t.node);
}

int precedence(const Formula& f) {
  if (const auto* b = std::get_if<formula::Binary>(&f.node)) {
    switch (b->op) {
      case BoolOp::Implies:
        return 1;
      case BoolOp::Or:
        return 2;
      case BoolOp::And:
        return 3;
    }
  }
  return 4;
}

void print_wrapped(const Formula& f, bool wrap, std::string& out) {
  if (wrap) out += "(";
  print(f, out);
  if (wrap) out += ")";
}

void print(const Formula& f, std::string& out) {
  struct V {
    std::string& out;
    const Formula& self;
    void operator()(const formula::Truth& t) const { out += t.value ? "true" : "false"; }
    void operator()(const formula::Compare& c) const {
      print(*c.lhs, out);
      switch (c.op) {
        case CmpOp::Eq:
          out += " = ";
          break;
        case CmpOp::Less:
          out += " < ";
          break;
        case CmpOp::Member:
          out += " in ";
          break;
        case CmpOp::Prefix:
          out += " prefix ";
          break;
      }
      print(*c.rhs, out);
    }
    void operator()(const formula::Not& n) const {
      out += "not ";
      print_wrapped(*n.body, precedence(*n.body) < 4, out);
    }
    void operator()(const formula::Binary& b) const {
      const int p = precedence(self);
      const bool right_assoc = b.op == BoolOp::Implies;
      const int lp = precedence(*b.lhs);
      const int rp = precedence(*b.rhs);
      print_wrapped(*b.lhs, right_assoc ? lp <= p : lp < p, out);
      out += b.op == BoolOp::And ? " and " : b.op == BoolOp::Or ? " or " : " -> ";
      print_wrapped(*b.rhs, right_assoc ? rp < p : rp <= p, out);
    }
    void operator()(const formula::Bounded& q) const {
      out += q.quantifier == Quantifier::Forall ? "forall " : "exists ";
      out += q.var;
      out += q.bound == BoundKind::Member ? " in " : " prefix ";
      print(*q.over, out);
      out += " : (";
      print(*q.body, out);
      out += ")";
    }
    void operator()(const formula::Pred& p) const {
      switch (p.kind) {
        case PredKind::Nat:
          out += "is_nat(";
          break;
        case PredKind::Real:
          out += "is_real(";
          break;
        case PredKind::Field:
          out += "is_field(";
          break;
        case PredKind::Card:
          out += "card(";
          break;
      }
      print(*p.arg, out);
      if (p.kind == PredKind::Card) {
        out += ", ";
        out += to_string(p.card);
      }
      out += ")";
    }
  };
  std::visit(V{out, f}, f.node);
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace doctheory
