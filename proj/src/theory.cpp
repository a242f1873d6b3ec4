#include "doctheory/theory.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace doctheory {

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
  std::string out;
  if (!file.empty()) out += std::string(file) + ":";
  if (d.loc.line > 0) out += std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) + ":";
  if (!out.empty()) out += " ";
  out += "error: " + d.message;
  return out;
}

const FieldDecl* Theory::find_field(std::string_view n) const {
  auto it = std::find_if(fields.begin(), fields.end(), [&](const FieldDecl& f) { return f.name == n; });
  return it == fields.end() ? nullptr : &*it;
}

const FormDecl* Theory::find_form(std::string_view n) const {
  auto it = std::find_if(forms.begin(), forms.end(), [&](const FormDecl& f) { return f.name == n; });
  return it == forms.end() ? nullptr : &*it;
}

const FilterDef* Theory::find_filter(std::string_view n) const {
  auto it = std::find_if(filters.begin(), filters.end(), [&](const FilterDef& f) { return f.name == n; });
  return it == filters.end() ? nullptr : &*it;
}

bool Theory::has_transaction(std::string_view n) const {
  return std::find(transactions.begin(), transactions.end(), n) != transactions.end();
}

FieldSchema Theory::schema() const {
  FieldSchema s;
  for (const auto& f : fields) s.fields.emplace_back(f.name, f.card);
  return s;
}

EvalContext Theory::context() const { return EvalContext{precision, nullptr}; }

std::vector<std::string> rule_scope(DaemonKind kind) {
  if (kind == DaemonKind::SetField) return {"docID", "fValue", "model"};
  return {"docID", "params", "model"};
}

namespace {

class Validator {
 public:
  explicit Validator(const Theory& th) : th_(th) {}

  std::vector<Diagnostic> run() {
    names();
    for (const auto& f : th_.forms) form(f);
    for (const auto& f : th_.filters) filter(f);
    for (std::size_t i = 0; i < th_.set_rules.size(); ++i) rule(th_.set_rules[i], i);
    for (std::size_t i = 0; i < th_.trans_rules.size(); ++i) rule(th_.trans_rules[i], i);
    return std::move(out_);
  }

 private:
  const Theory& th_;
  std::vector<Diagnostic> out_;

  void error(SourceLoc loc, std::string msg) { out_.push_back(Diagnostic{loc, std::move(msg)}); }

  void names() {
    if (th_.forms.empty()) error({}, "FormNames must be non-empty: declare at least one form");
    if (!th_.precision.valid()) error({}, "precision needs k, m >= 0 and k + m >= 1");
    std::map<std::string, std::string> kind_of;
    auto declare = [&](const std::string& name, const char* kind, SourceLoc loc) {
      if (name == "CreateDoc" || name == "SetField" || name == "fault") {
        error(loc, "'" + name + "' is reserved and cannot be declared as a " + kind);
        return;
      }
      auto [it, fresh] = kind_of.emplace(name, kind);
      if (!fresh) {
        if (it->second == kind) {
          error(loc, std::string(kind) + " '" + name + "' is declared twice");
        } else {
          error(loc, "'" + name + "' is declared both as " + it->second + " and as " + kind +
                         " (name sets must be pairwise disjoint)");
        }
      }
    };
    for (const auto& f : th_.fields) declare(f.name, "field", {});
    for (const auto& f : th_.forms) declare(f.name, "form", f.loc);
    for (const auto& f : th_.filters) declare(f.name, "filter", f.loc);
    for (const auto& t : th_.transactions) declare(t, "transaction", {});
  }

  void form(const FormDecl& f) {
    std::set<std::string> seen;
    for (const auto& b : f.blank) {
      const FieldDecl* decl = th_.find_field(b.field);
      if (decl == nullptr) {
        error(f.loc, "form '" + f.name + "' uses undeclared field '" + b.field + "'");
        continue;
      }
      if (!seen.insert(b.field).second) error(f.loc, "form '" + f.name + "' lists field '" + b.field + "' twice");
      if (!b.default_value.is_list()) {
        error(f.loc, "default of '" + f.name + "." + b.field + "' must be a value list");
      } else if (!card_holds(decl->card, b.default_value)) {
        error(f.loc, "default of '" + f.name + "." + b.field + "' violates cardinality '" + to_string(decl->card) + "'");
      }
    }
  }

  void scope(const std::vector<std::string>& used, const std::vector<std::string>& allowed, SourceLoc loc,
             const std::string& where) {
    for (const auto& v : used) {
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        error(loc, where + " mentions '" + v + "' outside its scope {" + list + "}");
      }
    }
  }

  void document_term(const Term& t, const std::vector<std::string>& allowed, SourceLoc loc, const std::string& where) {
    if (!is_document_term(t)) error(loc, where + " must be a document term (no cond/bsearch/rec)");
    scope(free_vars(t), allowed, loc, where);
  }

  // Every model argument of a document accessor must be the model variable.
  void model_arguments(const Term& t, SourceLoc loc, const std::string& where) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, term::Call>) {
            int model_arg = -1;
            if (n.fn == Fn::LastDocId) model_arg = 0;
            if (n.fn == Fn::DocById) model_arg = 1;
            if (n.fn == Fn::FieldValue) model_arg = 2;
            if (model_arg >= 0) {
              const auto* v = std::get_if<term::Var>(&n.args[static_cast<std::size_t>(model_arg)].node);
              if (v == nullptr || v->name != "model") {
                error(loc, where + ": " + fn_info(n.fn).name + " must be applied to the variable 'model'");
              }
            }
            for (const auto& a : n.args) model_arguments(a, loc, where);
          } else if constexpr (std::is_same_v<N, term::ListLit>) {
            for (const auto& a : n.items) model_arguments(a, loc, where);
          }
        },
        t.node);
  }

  void model_arguments(const Formula& f, SourceLoc loc, const std::string& where) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, formula::Compare>) {
            model_arguments(*n.lhs, loc, where);
            model_arguments(*n.rhs, loc, where);
          } else if constexpr (std::is_same_v<N, formula::Not>) {
            model_arguments(*n.body, loc, where);
          } else if constexpr (std::is_same_v<N, formula::Binary>) {
            model_arguments(*n.lhs, loc, where);
            model_arguments(*n.rhs, loc, where);
          }
        },
        f.node);
  }

  void filter(const FilterDef& f) {
    const std::string where = "filter '" + f.name + "'";
    if (!is_guard_formula(f.condition)) {
      error(f.loc, where + " condition must be a Boolean combination of '=' and '<' over document terms");
    }
    scope(free_vars(f.condition), {f.var, "params", "model"}, f.loc, where);
    model_arguments(f.condition, f.loc, where);
  }

  void rule(const DaemonRule& r, std::size_t index) {
    const bool set = r.kind == DaemonKind::SetField;
    const std::string where = std::string(set ? "on set " : "on trans ") + r.form + "." + r.trigger + " (rule " +
                              std::to_string(index + 1) + ")";
    if (th_.find_form(r.form) == nullptr) error(r.loc, where + ": undeclared form '" + r.form + "'");
    if (set && th_.find_field(r.trigger) == nullptr) error(r.loc, where + ": undeclared field '" + r.trigger + "'");
    if (!set && !th_.has_transaction(r.trigger)) {
      error(r.loc, where + ": undeclared transaction '" + r.trigger + "'");
    }
    const auto allowed = rule_scope(r.kind);
    if (!is_guard_formula(r.guard)) {
      error(r.loc, where + ": guard must be a Boolean combination of '=' and '<' over document terms");
    }
    scope(free_vars(r.guard), allowed, r.loc, where + " guard");
    if (r.clears_queue && !r.extension.empty()) error(r.loc, where + ": skip-queue rule cannot emit instructions");

    // Parameters of emitted transactions see params and model only in
    // transaction daemons.
    const std::vector<std::string> loop_scope =
        set ? allowed : std::vector<std::string>{"params", "model"};

    for (std::size_t i = 0; i < r.extension.size(); ++i) {
      const std::string at = where + ", term " + std::to_string(i + 1);
      std::visit(
          [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, instr::SetField>) {
              if (th_.find_field(s.field) == nullptr) error(r.loc, at + ": undeclared field '" + s.field + "'");
              if (s.target) document_term(*s.target, allowed, r.loc, at + " set target");
              document_term(s.value, allowed, r.loc, at + " set value");
            } else if constexpr (std::is_same_v<S, instr::Create>) {
              if (set) error(r.loc, at + ": CreateDoc instructions may only be emitted by transaction daemons");
              if (th_.find_form(s.form) == nullptr) error(r.loc, at + ": undeclared form '" + s.form + "'");
            } else if constexpr (std::is_same_v<S, instr::Transaction>) {
              if (!th_.has_transaction(s.name)) error(r.loc, at + ": undeclared transaction '" + s.name + "'");
              document_term(s.target, allowed, r.loc, at + " transaction target");
              document_term(s.params, allowed, r.loc, at + " transaction parameters");
            } else {
              if (th_.find_filter(s.filter) == nullptr) error(r.loc, at + ": undeclared filter '" + s.filter + "'");
              if (th_.find_form(s.form) == nullptr) error(r.loc, at + ": undeclared form '" + s.form + "'");
              document_term(s.filter_params, allowed, r.loc, at + " filter parameters");
              if (const auto* t = std::get_if<instr::FilterLoop::EmitTrans>(&s.body)) {
                if (!th_.has_transaction(t->name)) error(r.loc, at + ": undeclared transaction '" + t->name + "'");
                document_term(t->params, loop_scope, r.loc, at + " loop transaction parameters");
              } else {
                const auto& c = std::get<instr::FilterLoop::EmitCreate>(s.body);
                if (set) error(r.loc, at + ": CreateDoc instructions may only be emitted by transaction daemons");
                if (th_.find_form(c.form) == nullptr) error(r.loc, at + ": undeclared form '" + c.form + "'");
              }
            }
          },
          r.extension[i]);
    }
  }
};

}  // namespace

std::vector<Diagnostic> validate_theory(const Theory& th) { return Validator(th).run(); }

Value blank(const Value& form_name, const Theory& th) {
  if (!form_name.is_atom()) return fault();
  const FormDecl* f = th.find_form(form_name.atom_name());
  if (f == nullptr) return fault();
  Value doc;
  for (const auto& b : f->blank) doc = doc.cons(make_field(b.default_value, Value::atom(b.field)));
  return doc;
}

bool check_field(const Value& f, const Theory& th) { return th.schema().check_field(f); }

Result<Value> eval_filter(const FilterDef& filter, const Value& form, const Value& params, const Value& model,
                          const Theory& th) {
  if (!model.is_list()) return EvalError{"filter over a non-list model"};
  const EvalContext ctx = th.context();
  Env env{{"params", params}, {"model", model}};
  std::unordered_set<Value, ValueHash> seen;
  Value ids;
  for (Value rest = model; rest.size() > 0; rest = rest.tail()) {
    const Value tuple = rest.head();
    if (!tuple.is_list() || tuple.size() != 4) return EvalError{"malformed document tuple in model"};
    const Value id = tuple.head();
    // Only the newest version of each document decides.
    if (!seen.insert(id).second) continue;
    if (tuple.at(1) != form) continue;
    env.insert_or_assign(filter.var, tuple);
    auto ok = eval_formula(filter.condition, env, ctx);
    if (!ok) return ok.error();
    if (*ok) ids = ids.cons(id);
  }
  return ids;
}

Result<Value> eval_filter(std::string_view filter_name, const Value& form, const Value& params, const Value& model,
                          const Theory& th) {
  const FilterDef* f = th.find_filter(filter_name);
  if (f == nullptr) return EvalError{"unknown filter '" + std::string(filter_name) + "'"};
  return eval_filter(*f, form, params, model, th);
}

}  // namespace doctheory
