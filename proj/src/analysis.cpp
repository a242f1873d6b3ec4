#include "doctheory/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "doctheory/docmodel.hpp"

namespace doctheory {

namespace {

constexpr const char* kCreateDoc = "CreateDoc";

bool targets_own_document(const std::optional<Term>& target) {
  if (!target) return true;
  const auto* v = std::get_if<term::Var>(&target->node);
  return v != nullptr && v->name == "docID";
}

std::vector<Vertex> on_forms(const DaemonRule& rule, const std::string& name, bool own, const Theory& th) {
  if (own) return {Vertex{rule.form, name}};
  std::vector<Vertex> out;
  for (const auto& f : th.forms) out.push_back(Vertex{f.name, name});
  return out;
}

bool is_loop_or_transaction(const InstructionTerm& t) {
  return std::holds_alternative<instr::FilterLoop>(t) || std::holds_alternative<instr::Transaction>(t);
}

const InstructionTerm& term_at(const Theory& th, const TermLocation& loc) {
  return th.rules(loc.kind)[loc.rule].extension[loc.term];
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool& saturated) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    saturated = true;
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool& saturated) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    saturated = true;
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

std::string to_string(const Vertex& v) { return "(" + v.form + ", " + v.name + ")"; }

std::string to_string(const TermLocation& loc) {
  return std::string(loc.kind == DaemonKind::SetField ? "set" : "trans") + " rule " + std::to_string(loc.rule + 1) +
         ", term " + std::to_string(loc.term + 1);
}

std::optional<std::size_t> DependencyGraph::find(std::string_view form, std::string_view name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].form == form && vertices[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> DependencyGraph::successors() const {
  std::vector<std::vector<std::size_t>> out(vertices.size());
  for (const auto& e : edges) {
    auto& s = out[e.from];
    if (std::find(s.begin(), s.end(), e.to) == s.end()) s.push_back(e.to);
  }
  return out;
}

std::vector<Vertex> term_targets(const DaemonRule& rule, const InstructionTerm& term, const Theory& th) {
  return std::visit(
      [&](const auto& s) -> std::vector<Vertex> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, instr::SetField>) {
          return on_forms(rule, s.field, targets_own_document(s.target), th);
        } else if constexpr (std::is_same_v<S, instr::Create>) {
          return {Vertex{s.form, kCreateDoc}};
        } else if constexpr (std::is_same_v<S, instr::Transaction>) {
          return on_forms(rule, s.name, targets_own_document(s.target), th);
        } else {
          if (const auto* t = std::get_if<instr::FilterLoop::EmitTrans>(&s.body)) return {Vertex{s.form, t->name}};
          return {Vertex{std::get<instr::FilterLoop::EmitCreate>(s.body).form, kCreateDoc}};
        }
      },
      term);
}

DependencyGraph dependency_graph(const Theory& th) {
  DependencyGraph g;
  std::map<Vertex, std::size_t> index;
  for (const auto& f : th.forms) {
    auto add = [&](const std::string& name) {
      Vertex v{f.name, name};
      if (index.emplace(v, g.vertices.size()).second) g.vertices.push_back(v);
    };
    for (const auto& fd : th.fields) add(fd.name);
    for (const auto& t : th.transactions) add(t);
    add(kCreateDoc);
  }
  for (const DaemonKind kind : {DaemonKind::SetField, DaemonKind::ExecTrans}) {
    const auto& rules = th.rules(kind);
    for (std::size_t r = 0; r < rules.size(); ++r) {
      auto from = index.find(Vertex{rules[r].form, rules[r].trigger});
      if (from == index.end()) continue;
      for (std::size_t t = 0; t < rules[r].extension.size(); ++t) {
        for (const auto& target : term_targets(rules[r], rules[r].extension[t], th)) {
          auto to = index.find(target);
          if (to == index.end()) continue;
          g.edges.push_back(Edge{from->second, to->second, TermLocation{kind, r, t}});
        }
      }
    }
  }
  return g;
}

CycleCheck find_cycle(const DependencyGraph& g) {
  const auto succ = g.successors();
  enum Color { White, Gray, Black };
  std::vector<Color> color(g.vertices.size(), White);
  std::vector<std::size_t> path;
  std::vector<std::size_t> next_child;
  for (std::size_t root = 0; root < g.vertices.size(); ++root) {
    if (color[root] != White) continue;
    path.assign(1, root);
    next_child.assign(1, 0);
    color[root] = Gray;
    while (!path.empty()) {
      const std::size_t v = path.back();
      if (next_child.back() == succ[v].size()) {
        color[v] = Black;
        path.pop_back();
        next_child.pop_back();
        continue;
      }
      const std::size_t w = succ[v][next_child.back()++];
      if (color[w] == Gray) {
        CycleCheck out;
        out.acyclic = false;
        auto start = std::find(path.begin(), path.end(), w);
        for (auto it = start; it != path.end(); ++it) out.cycle.push_back(g.vertices[*it]);
        return out;
      }
      if (color[w] == White) {
        color[w] = Gray;
        path.push_back(w);
        next_child.push_back(0);
      }
    }
  }
  return {};
}

CycleCheck is_locally_simple(const Theory& th) { return find_cycle(dependency_graph(th)); }

std::vector<std::vector<Vertex>> nonsingleton_components(const DependencyGraph& g) {
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges) parent[root(e.from)] = root(e.to);
  std::map<std::size_t, std::vector<Vertex>> groups;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) groups[root(v)].push_back(g.vertices[v]);
  std::vector<std::vector<Vertex>> out;
  for (auto& [r, vs] : groups) {
    if (vs.size() < 2) continue;
    std::sort(vs.begin(), vs.end());
    out.push_back(std::move(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Result<std::vector<std::size_t>> longest_paths(const DependencyGraph& g) {
  auto cyc = find_cycle(g);
  if (!cyc.acyclic) return EvalError{"dependency graph has a cycle through " + to_string(cyc.cycle.front())};
  const auto succ = g.successors();
  std::vector<std::size_t> len(g.vertices.size(), 0);
  // Reverse topological order by iterative post-order DFS.
  std::vector<bool> done(g.vertices.size(), false);
  for (std::size_t root = 0; root < g.vertices.size(); ++root) {
    if (done[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        const std::size_t w = succ[v][i++];
        if (!done[w]) stack.emplace_back(w, 0);
        continue;
      }
      std::size_t best = 0;
      for (const std::size_t w : succ[v]) best = std::max(best, len[w]);
      len[v] = best + 1;
      done[v] = true;
      stack.pop_back();
    }
  }
  return len;
}

Result<std::size_t> rank_over_forms(const Value& instruction, const Theory& th, const std::vector<std::string>& forms) {
  if (!instruction.is_list() || instruction.size() == 0 || !instruction.head().is_atom()) return std::size_t{0};
  const Value tag = instruction.head();
  std::string name;
  if (tag == set_field_tag() && instruction.size() == 4 && instruction.at(1).is_atom()) {
    name = instruction.at(1).atom_name();
  } else if (th.has_transaction(tag.atom_name()) && instruction.size() == 3) {
    name = tag.atom_name();
  } else {
    return std::size_t{0};
  }
  const DependencyGraph g = dependency_graph(th);
  auto len = longest_paths(g);
  if (!len) return len.error();
  std::size_t best = 0;
  for (const auto& f : forms) {
    if (auto v = g.find(f, name)) best = std::max(best, (*len)[*v] - 1);
  }
  return best;
}

namespace {

std::vector<std::string> forms_in_model(const Value& model) {
  std::set<std::string> out;
  if (model.is_list()) {
    for (const auto& t : model.elements()) {
      if (t.is_list() && t.size() == 4 && t.at(1).is_atom()) out.insert(std::string(t.at(1).atom_name()));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

Result<std::size_t> rank(const Value& instruction, const Theory& th, const Value& model) {
  return rank_over_forms(instruction, th, forms_in_model(model));
}

Result<std::vector<TermLocation>> document_generating(const Theory& th) {
  const DependencyGraph g = dependency_graph(th);
  auto cyc = find_cycle(g);
  if (!cyc.acyclic) return EvalError{"document_generating needs a locally simple theory"};

  std::vector<TermLocation> all;
  for (const DaemonKind kind : {DaemonKind::SetField, DaemonKind::ExecTrans}) {
    const auto& rules = th.rules(kind);
    for (std::size_t r = 0; r < rules.size(); ++r) {
      for (std::size_t t = 0; t < rules[r].extension.size(); ++t) all.push_back(TermLocation{kind, r, t});
    }
  }

  std::set<TermLocation> gen;
  for (const auto& loc : all) {
    const auto& term = term_at(th, loc);
    const auto* loop = std::get_if<instr::FilterLoop>(&term);
    if (std::holds_alternative<instr::Create>(term) ||
        (loop != nullptr && std::holds_alternative<instr::FilterLoop::EmitCreate>(loop->body))) {
      gen.insert(loc);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& loc : all) {
      if (gen.count(loc) != 0) continue;
      const auto& rule = th.rules(loc.kind)[loc.rule];
      bool hit = false;
      for (const auto& v : term_targets(rule, term_at(th, loc), th)) {
        auto vi = g.find(v.form, v.name);
        if (!vi) continue;
        for (const auto& e : g.edges) {
          if (e.from == *vi && gen.count(e.source) != 0) {
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
      if (hit) {
        gen.insert(loc);
        changed = true;
      }
    }
  }
  return std::vector<TermLocation>(gen.begin(), gen.end());
}

std::size_t max_extension_terms(const Theory& th) {
  std::size_t n = 0;
  for (const auto& r : th.set_rules) n = std::max(n, r.extension.size());
  for (const auto& r : th.trans_rules) n = std::max(n, r.extension.size());
  return n;
}

namespace {

// Generating terms that can fan out: loops, and literal transactions whose
// cascade creates documents.
std::vector<TermLocation> unbounded_generators(const Theory& th, const std::vector<TermLocation>& gen) {
  std::vector<TermLocation> out;
  for (const auto& loc : gen) {
    if (is_loop_or_transaction(term_at(th, loc))) out.push_back(loc);
  }
  return out;
}

}  // namespace

EffectBounds effect_bounds(const Theory& th, const Value& model, const Value& queue) {
  EffectBounds b;
  auto gen = document_generating(th);
  if (!gen) {
    b.reason = "theory is not locally simple";
    return b;
  }
  const auto bad = unbounded_generators(th, *gen);
  if (!bad.empty()) {
    b.reason = "document generating loop or transaction term at " + to_string(bad.front());
    return b;
  }
  if (!model.is_list() || !queue.is_list()) {
    b.reason = "model and queue must be lists";
    return b;
  }

  std::unordered_set<Value, ValueHash> ids;
  for (const auto& t : model.elements()) {
    if (t.is_list() && t.size() == 4) ids.insert(t.head());
  }

  b.applicable = true;
  b.N = max_extension_terms(th);
  b.model_tuples = model.size();
  b.model_documents = ids.size();
  b.queue_size = queue.size();
  if (queue.size() == 0) {
    b.documents = b.model_documents;
    b.tuples = b.model_tuples;
    return b;
  }

  std::set<std::string> forms;
  for (const auto& f : forms_in_model(model)) forms.insert(f);
  for (const auto& q : queue.elements()) {
    if (q.is_list() && q.size() == 2 && q.head() == create_doc_tag() && q.at(0).is_atom()) {
      forms.insert(std::string(q.at(0).atom_name()));
    }
  }
  for (const auto& r : th.trans_rules) {
    for (const auto& t : r.extension) {
      if (const auto* c = std::get_if<instr::Create>(&t)) forms.insert(c->form);
    }
  }
  const std::vector<std::string> form_list(forms.begin(), forms.end());
  std::size_t k = 0;
  for (const auto& q : queue.elements()) {
    auto r = rank_over_forms(q, th, form_list);
    if (r) k = std::max(k, *r);
  }
  b.k = k;

  bool sat = false;
  const std::uint64_t n_star = std::max<std::uint64_t>(b.N, 1);
  const std::uint64_t m_max = sat_add(b.model_documents, sat_mul(b.queue_size, n_star, sat), sat);
  const std::uint64_t base = sat_mul(n_star, sat_add(m_max, n_star, sat), sat);
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i < k; ++i) power = sat_mul(power, base, sat);
  b.steps = sat_mul(b.queue_size, power, sat);
  b.documents = m_max;
  b.tuples = sat_add(b.model_tuples, b.steps, sat);
  b.saturated = sat;
  return b;
}

const char* to_string(VerdictClass c) {
  switch (c) {
    case VerdictClass::PolyBounded:
      return "poly-bounded";
    case VerdictClass::TerminatingUnbounded:
      return "terminating-unbounded";
    case VerdictClass::PossiblyNonTerminating:
      return "possibly-non-terminating";
  }
  return "unknown";
}

int exit_code(VerdictClass c) {
  switch (c) {
    case VerdictClass::PolyBounded:
      return 0;
    case VerdictClass::TerminatingUnbounded:
      return 4;
    case VerdictClass::PossiblyNonTerminating:
      return 5;
  }
  return 5;
}

Verdict analyze(const Theory& th, const std::optional<Value>& model, const std::optional<Value>& queue) {
  Verdict v;
  v.graph = dependency_graph(th);
  v.cycle = find_cycle(v.graph);
  v.N = max_extension_terms(th);
  v.components = nonsingleton_components(v.graph);
  if (v.cycle.acyclic) {
    auto gen = document_generating(th);
    if (gen) v.doc_generating = *gen;
    v.poly_bounded = unbounded_generators(th, v.doc_generating).empty();
    v.verdict = v.poly_bounded ? VerdictClass::PolyBounded : VerdictClass::TerminatingUnbounded;
  }
  if (queue) v.bounds = effect_bounds(th, model.value_or(Value()), *queue);
  return v;
}

}  // namespace doctheory
