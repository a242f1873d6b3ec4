#include <doctest.h>

#include <set>
#include <unordered_set>

#include "../oracles/graph_oracle.hpp"
#include "../support/generators.hpp"
#include "doctheory/analysis.hpp"
#include "doctheory/chase.hpp"
#include "doctheory/dsl.hpp"
#include "doctheory/reductions.hpp"

using namespace doctheory;

namespace {

Theory theory(const std::string& name) { return testgen::load_theory(testgen::fixture_path("theories/" + name + ".dth")); }

oracle::V as_pair(const Vertex& v) { return {v.form, v.name}; }

std::set<std::pair<oracle::V, oracle::V>> edge_set(const DependencyGraph& g) {
  std::set<std::pair<oracle::V, oracle::V>> out;
  for (const auto& e : g.edges) out.insert({as_pair(g.vertices[e.from]), as_pair(g.vertices[e.to])});
  return out;
}

bool is_cycle(const DependencyGraph& g, const std::vector<Vertex>& c) {
  if (c.empty()) return false;
  const auto edges = edge_set(g);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!edges.count({as_pair(c[i]), as_pair(c[(i + 1) % c.size()])})) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("graph facts agree with brute force on random theories") {
  testgen::Rng rng(404);
  int acyclic = 0, cyclic = 0;
  for (int i = 0; i < 300; ++i) {
    const Theory th = testgen::random_theory(rng);
    const oracle::GraphOracle o(th);
    const DependencyGraph g = dependency_graph(th);

    std::vector<oracle::V> verts;
    for (const auto& v : g.vertices) verts.push_back(as_pair(v));
    CHECK(std::set<oracle::V>(verts.begin(), verts.end()) == std::set<oracle::V>(o.vertices.begin(), o.vertices.end()));
    CHECK(verts.size() == o.vertices.size());
    CHECK(edge_set(g) == o.edges);

    const CycleCheck c = find_cycle(g);
    CHECK(c.acyclic == !o.cyclic());
    if (!c.acyclic) {
      ++cyclic;
      CHECK(is_cycle(g, c.cycle));
      CHECK_FALSE(longest_paths(g).has_value());
      CHECK_FALSE(document_generating(th).has_value());
      continue;
    }
    ++acyclic;

    std::vector<std::vector<oracle::V>> comps;
    for (const auto& comp : nonsingleton_components(g)) {
      std::vector<oracle::V> c2;
      for (const auto& v : comp) c2.push_back(as_pair(v));
      comps.push_back(c2);
    }
    std::sort(comps.begin(), comps.end());
    CHECK(comps == o.components());

    auto lp = longest_paths(g);
    REQUIRE(lp.has_value());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) CHECK((*lp)[v] == o.longest_path(as_pair(g.vertices[v])));

    auto gen = document_generating(th);
    REQUIRE(gen.has_value());
    std::set<std::tuple<bool, std::size_t, std::size_t>> got;
    for (const auto& loc : *gen) got.insert({loc.kind == DaemonKind::SetField, loc.rule, loc.term});
    CHECK(got == o.document_generating(th));

    for (const auto& [loc, targets] : o.term_targets) {
      const auto& [set, r, t] = loc;
      const DaemonRule& rule = (set ? th.set_rules : th.trans_rules)[r];
      std::vector<oracle::V> mine;
      for (const auto& v : term_targets(rule, rule.extension[t], th)) mine.push_back(as_pair(v));
      CHECK(std::set<oracle::V>(mine.begin(), mine.end()) == std::set<oracle::V>(targets.begin(), targets.end()));
    }
  }
  CHECK(acyclic > 50);
  CHECK(cyclic > 50);
}

TEST_CASE("rank is the longest outgoing path minus one") {
  testgen::Rng rng(405);
  for (int i = 0; i < 200; ++i) {
    const Theory th = testgen::random_theory(rng);
    const oracle::GraphOracle o(th);
    if (o.cyclic()) {
      CHECK_FALSE(rank(Value::list({Value(), Value::nat(1), Value::atom("T0")}), th, Value()).has_value());
      continue;
    }
    std::vector<std::string> forms;
    Value model;
    for (const auto& f : th.forms) {
      if (testgen::chance(rng, 0.6)) {
        forms.push_back(f.name);
        model = model.cons(make_tuple(Value(), Value::atom(f.name), blank(Value::atom(f.name), th),
                                      Value::nat(model.size() + 1)));
      }
    }
    for (const std::string name : {"T0", "T1", "a", "b"}) {
      const bool field = name == "a" || name == "b";
      const Value instruction = field ? Value::list({Value(), Value::atom(name), Value::nat(1), set_field_tag()})
                                      : Value::list({Value(), Value::nat(1), Value::atom(name)});
      std::size_t want = 0;
      for (const auto& f : forms) want = std::max(want, o.longest_path({f, name}) - 1);
      auto got = rank(instruction, th, model);
      REQUIRE(got.has_value());
      CHECK(*got == want);
      auto over = rank_over_forms(instruction, th, forms);
      REQUIRE(over.has_value());
      CHECK(*over == want);
    }
    auto c = rank(Value::list({Value::atom("F0"), create_doc_tag()}), th, model);
    REQUIRE(c.has_value());
    CHECK(*c == 0);
  }
}

TEST_CASE("rank of MakeExp_2 follows the chain through Duplicate") {
  const Encoded e = exp_theory({2, 1});
  const oracle::GraphOracle o(e.theory);
  const Value model = Value::list({make_tuple(Value(), Value::atom("Form_2"), Value(), Value::nat(1))});
  auto r = rank(Value::list({Value(), Value::nat(1), Value::atom("MakeExp_2")}), e.theory, model);
  REQUIRE(r.has_value());
  CHECK(*r == o.longest_path({"Form_2", "MakeExp_2"}) - 1);
  CHECK(*r == 2);
  auto none = rank(Value::list({Value(), Value::nat(1), Value::atom("MakeExp_2")}), e.theory, Value());
  REQUIRE(none.has_value());
  CHECK(*none == 0);
}

TEST_CASE("verdicts of the bundled theories") {
  CHECK(analyze(theory("ticket_escalation")).verdict == VerdictClass::PolyBounded);
  CHECK(analyze(theory("order_fulfillment")).verdict == VerdictClass::TerminatingUnbounded);
  CHECK(analyze(theory("purchase_approval")).verdict == VerdictClass::TerminatingUnbounded);
  const Verdict loop = analyze(theory("reminder_loop"));
  CHECK(loop.verdict == VerdictClass::PossiblyNonTerminating);
  CHECK(is_cycle(loop.graph, loop.cycle.cycle));
  CHECK(exit_code(VerdictClass::PolyBounded) == 0);
  CHECK(exit_code(VerdictClass::TerminatingUnbounded) == 4);
  CHECK(exit_code(VerdictClass::PossiblyNonTerminating) == 5);
}

TEST_CASE("poly-bounded implies locally simple") {
  testgen::Rng rng(406);
  for (int i = 0; i < 200; ++i) {
    const Verdict v = analyze(testgen::random_theory(rng));
    if (v.poly_bounded) CHECK(v.cycle.acyclic);
    if (!v.cycle.acyclic) CHECK(v.verdict == VerdictClass::PossiblyNonTerminating);
  }
}

TEST_CASE("effect bounds hold on random runs") {
  const Theory th = theory("ticket_escalation");
  const auto pool = testgen::value_pool(th);
  testgen::Rng rng(407);
  for (int i = 0; i < 200; ++i) {
    const Value model = testgen::random_model(rng, th, pool, 10);
    const Value queue = testgen::random_queue(rng, th, pool, 10, model.size() + 2);
    const EffectBounds b = effect_bounds(th, model, queue);
    REQUIRE(b.applicable);
    auto run = run_chase(model, queue, th, {.fuel = 1'000'000});
    REQUIRE(run.state.status != Status::FuelExhausted);
    if (run.state.status != Status::Terminated) continue;
    CHECK(run.state.steps <= b.steps);
    CHECK(run.state.model.size() <= b.tuples);
    std::unordered_set<Value, ValueHash> ids;
    for (const auto& t : run.state.model.elements()) ids.insert(t.head());
    CHECK(ids.size() <= b.documents);
  }
}

TEST_CASE("effect bounds refuse generating theories") {
  const EffectBounds b = effect_bounds(theory("order_fulfillment"), Value(), Value());
  CHECK_FALSE(b.applicable);
  CHECK_FALSE(b.reason.empty());
  const EffectBounds c = effect_bounds(theory("reminder_loop"), Value(), Value());
  CHECK_FALSE(c.applicable);
}
