#include "doctheory/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "doctheory/docmodel.hpp"
#include "doctheory/dsl.hpp"

namespace doctheory {

namespace {

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

bool plain_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool reserved(const std::string& s) {
  static const std::set<std::string> words{"docID", "fValue", "params", "model", "true", "false", "fault",
                                           "CreateDoc", "SetField", "TMcell", "TMsymbol", "MakeTMStep"};
  return words.count(s) != 0;
}

const char* kCell = "TMcell";
const char* kSymbol = "TMsymbol";
const char* kStep = "MakeTMStep";

Term var(const char* n) { return make_var(n); }
Term atom_list(const std::string& a) { return make_const(Value::list({Value::atom(a)})); }
Term tail_id() { return make_call(Fn::Tail, {var("docID")}); }
Term next_id() { return make_call(Fn::Cons, {var("docID"), make_const(Value())}); }
Term symbol_of(Term id) { return make_call(Fn::FieldValue, {std::move(id), make_const(Value::atom(kSymbol)), var("model")}); }

}  // namespace

std::vector<std::string> TMSpec::states() const {
  std::vector<std::string> out{start};
  for (const auto& t : delta) {
    add_unique(out, t.state);
    add_unique(out, t.next_state);
  }
  return out;
}

std::vector<std::string> TMSpec::alphabet() const {
  std::vector<std::string> out{blank};
  for (const auto& t : delta) {
    add_unique(out, t.symbol);
    add_unique(out, t.write);
  }
  return out;
}

const TMTransition* TMSpec::find(std::string_view state, std::string_view symbol) const {
  for (const auto& t : delta) {
    if (t.state == state && t.symbol == symbol) return &t;
  }
  return nullptr;
}

Result<TMSpec, Diagnostic> parse_tm(std::string_view text) {
  TMSpec tm;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    auto err = [&](std::string msg) { return Diagnostic{{lineno, 1}, std::move(msg)}; };
    if (w[0] == "blank" || w[0] == "start") {
      if (w.size() != 2) return err("expected '" + w[0] + " <name>'");
      (w[0] == "blank" ? tm.blank : tm.start) = w[1];
      continue;
    }
    if (w.size() != 6 || w[2] != "->") return err("expected 'state symbol -> state' symbol' L|R'");
    TMTransition t{w[0], w[1], w[3], w[4], 0};
    if (w[5] == "L" || w[5] == "-1") {
      t.move = -1;
    } else if (w[5] == "R" || w[5] == "+1" || w[5] == "1") {
      t.move = 1;
    } else {
      return err("move must be L or R, found '" + w[5] + "'");
    }
    tm.delta.push_back(std::move(t));
  }
  return tm;
}

std::string print_tm(const TMSpec& tm) {
  std::string out = "blank " + tm.blank + "\nstart " + tm.start + "\n";
  for (const auto& t : tm.delta) {
    out += t.state + " " + t.symbol + " -> " + t.next_state + " " + t.write + " " + (t.move < 0 ? "L" : "R") + "\n";
  }
  return out;
}

std::vector<std::string> check_tm(const TMSpec& tm) {
  std::vector<std::string> errors;
  const auto q = tm.states();
  const auto a = tm.alphabet();
  for (const auto& s : q) {
    if (std::find(a.begin(), a.end(), s) != a.end()) errors.push_back("'" + s + "' is both a state and a symbol");
  }
  for (const auto* names : {&q, &a}) {
    for (const auto& s : *names) {
      if (!plain_identifier(s)) errors.push_back("'" + s + "' is not a plain identifier");
      if (reserved(s)) errors.push_back("'" + s + "' is a reserved name");
    }
  }
  for (std::size_t i = 0; i < tm.delta.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (tm.delta[i].state == tm.delta[j].state && tm.delta[i].symbol == tm.delta[j].symbol) {
        errors.push_back("nondeterministic: two transitions for (" + tm.delta[i].state + ", " + tm.delta[i].symbol + ")");
      }
    }
  }
  return errors;
}

Result<Encoded> encode_tm(const TMSpec& tm) {
  const auto errors = check_tm(tm);
  if (!errors.empty()) return EvalError{errors.front()};

  Theory th;
  th.name = "tm";
  th.fields.push_back(FieldDecl{kSymbol, Cardinality::ExactlyOne});
  th.forms.push_back(FormDecl{kCell, {BlankField{kSymbol, Value::list({Value::atom(tm.blank)})}}, {}});
  th.transactions.push_back(kStep);
  th.trans_default = DefaultBranch::SkipQueue;

  // The state has reached cell 1: the head fell off the left end.
  DaemonRule edge;
  edge.kind = DaemonKind::ExecTrans;
  edge.form = kCell;
  edge.trigger = kStep;
  edge.guard = make_cmp(CmpOp::Eq, var("docID"), make_const(Value::nat(1)));
  edge.clears_queue = true;
  th.trans_rules.push_back(edge);

  auto set_at = [](std::optional<Term> target, Term value) {
    return InstructionTerm{instr::SetField{kSymbol, std::move(target), std::move(value)}};
  };
  auto step_at = [](Term target) { return InstructionTerm{instr::Transaction{kStep, std::move(target), make_const(Value())}}; };

  for (const auto& t : tm.delta) {
    const Formula scanned = make_and(make_cmp(CmpOp::Eq, symbol_of(var("docID")), atom_list(t.state)),
                                     make_cmp(CmpOp::Eq, symbol_of(tail_id()), atom_list(t.symbol)));
    DaemonRule r;
    r.kind = DaemonKind::ExecTrans;
    r.form = kCell;
    r.trigger = kStep;
    if (t.move < 0) {
      // a q -> q' a'
      r.guard = scanned;
      r.extension = {step_at(tail_id()), set_at(std::nullopt, atom_list(t.write)),
                     set_at(tail_id(), atom_list(t.next_state))};
      th.trans_rules.push_back(r);
      continue;
    }
    // a q b -> a' b q', creating a blank cell when q is the last letter.
    const InstructionTerm s1 = set_at(tail_id(), atom_list(t.write));
    const InstructionTerm s3 = set_at(next_id(), atom_list(t.next_state));
    const InstructionTerm s4 = step_at(next_id());
    DaemonRule grow = r;
    grow.guard = make_and(scanned, make_cmp(CmpOp::Eq, var("docID"), make_call(Fn::LastDocId, {var("model")})));
    grow.extension = {s4, s3, set_at(std::nullopt, atom_list(tm.blank)), s1, InstructionTerm{instr::Create{kCell}}};
    th.trans_rules.push_back(grow);
    r.guard = scanned;
    r.extension = {s4, s3, set_at(std::nullopt, symbol_of(next_id())), s1};
    th.trans_rules.push_back(r);
  }

  // Last element first: two cells, q0 in cell 2, then the first step.
  const Value create = Value::list({Value::atom(kCell), create_doc_tag()});
  const Value set_q0 =
      Value::list({Value::list({Value::atom(tm.start)}), Value::atom(kSymbol), Value::nat(2), set_field_tag()});
  const Value run = Value::list({Value(), Value::nat(2), Value::atom(kStep)});
  return Encoded{std::move(th), Value::list({run, set_q0, create, create})};
}

Result<TMConfiguration> read_configuration(const Value& model, const TMSpec& tm) {
  auto last = get_last_doc_id(model);
  if (!last) return last.error();
  const auto states = tm.states();
  TMConfiguration c;
  std::optional<std::size_t> state_cell;
  for (std::size_t id = 1; id <= last->size(); ++id) {
    auto v = get_field_value(Value::nat(id), Value::atom(kSymbol), model);
    if (!v) return v.error();
    if (!v->is_list() || v->size() != 1 || !v->head().is_atom()) {
      return EvalError{"cell " + std::to_string(id) + " does not hold a single symbol"};
    }
    const std::string sym(v->head().atom_name());
    if (std::find(states.begin(), states.end(), sym) != states.end()) {
      if (state_cell) return EvalError{"more than one cell holds a state"};
      state_cell = id;
      c.state = sym;
    } else {
      c.tape.push_back(sym);
    }
  }
  if (!state_cell) return EvalError{"no cell holds a state"};
  c.head = static_cast<long>(*state_cell) - 2;
  return c;
}

Encoded exp_theory(const ExpParams& p) {
  auto form = [](std::size_t i) { return "Form_" + std::to_string(i); };
  auto make_exp = [](std::size_t i) { return "MakeExp_" + std::to_string(i); };
  Theory th;
  th.name = "exp_k" + std::to_string(p.k) + "_n" + std::to_string(p.n);
  for (std::size_t i = 0; i <= p.k; ++i) th.forms.push_back(FormDecl{form(i), {}, {}});
  for (std::size_t i = 1; i <= p.k; ++i) th.transactions.push_back(make_exp(i));
  th.transactions.push_back("Duplicate");
  th.filters.push_back(FilterDef{"SelectAllbyForm", "d", make_truth(true), {}});
  th.trans_default = DefaultBranch::SkipQueue;
  for (std::size_t i = 1; i <= p.k; ++i) {
    DaemonRule r;
    r.kind = DaemonKind::ExecTrans;
    r.form = form(i);
    r.trigger = make_exp(i);
    r.extension = {instr::FilterLoop{"SelectAllbyForm", form(i - 1), make_const(Value()),
                                     instr::FilterLoop::EmitTrans{"Duplicate", make_const(Value())}}};
    th.trans_rules.push_back(std::move(r));
  }
  for (std::size_t i = 1; i <= p.k; ++i) {
    DaemonRule r;
    r.kind = DaemonKind::ExecTrans;
    r.form = form(i - 1);
    r.trigger = "Duplicate";
    r.extension = {instr::FilterLoop{"SelectAllbyForm", form(i), make_const(Value()),
                                     instr::FilterLoop::EmitCreate{form(i)}}};
    th.trans_rules.push_back(std::move(r));
  }

  // run = <MakeExp_k, ..., MakeExp_1>, init = <Form_k, ..., Form_1, Form_0 x n>;
  // Form_0 documents get IDs 1..n and Form_i gets n + i.
  Value queue;
  for (std::size_t i = p.k; i >= 1; --i) queue = queue.cons(Value::list({Value(), Value::nat(p.n + i), Value::atom(make_exp(i))}));
  for (std::size_t i = p.k; i >= 1; --i) queue = queue.cons(Value::list({Value::atom(form(i)), create_doc_tag()}));
  for (std::size_t i = 0; i < p.n; ++i) queue = queue.cons(Value::list({Value::atom(form(0)), create_doc_tag()}));
  return Encoded{std::move(th), queue};
}

Result<std::uint64_t> exp_tower(std::size_t i, std::size_t n) {
  if (i == 0) return static_cast<std::uint64_t>(n);
  std::uint64_t v = n;
  for (std::size_t j = 0; j < i; ++j) {
    if (v > 63) return EvalError{"EXP^" + std::to_string(i) + "(" + std::to_string(n) + ") overflows 64 bits"};
    v = std::uint64_t{1} << v;
  }
  return v;
}

Result<ExpCounts> expected_counts(const ExpParams& p) {
  ExpCounts c;
  std::uint64_t sum = 0;
  std::uint64_t sum_minus_one = 0;
  std::uint64_t sum_below_k = 0;
  for (std::size_t i = 1; i <= p.k; ++i) {
    auto e = exp_tower(i, p.n);
    if (!e) return e.error();
    sum += *e;
    sum_minus_one += *e - 1;
    if (i < p.k) sum_below_k += *e;
  }
  c.model_size = p.n + sum;
  c.steps = (p.n + 2 * p.k) + p.n + sum_minus_one + sum_below_k;
  return c;
}

}  // namespace doctheory
