// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Expected values come from the oracles under tests/, never
// from the library under test.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "../oracles/decimal_oracle.hpp"
#include "../oracles/filter_oracle.hpp"
#include "../oracles/graph_oracle.hpp"
#include "../oracles/ref_eval.hpp"
#include "../oracles/tm_simulator.hpp"
#include "../support/generators.hpp"
#include "doctheory/analysis.hpp"
#include "doctheory/chase.hpp"
#include "doctheory/dsl.hpp"
#include "doctheory/eval.hpp"
#include "doctheory/numerics.hpp"
#include "doctheory/reductions.hpp"

using namespace doctheory;

namespace {

// Wall-clock limits in seconds.
constexpr double kListAxiomsLimit = 1.0;
constexpr double kArithmeticLimit = 5.0;
constexpr double kBlowupLimit = 10.0;
constexpr double kMachinesLimit = 30.0;
constexpr double kVerdictsLimit = 10.0;
constexpr double kTerminationLimit = 60.0;
constexpr double kSemanticsLimit = 10.0;
constexpr double kRoundTripLimit = 10.0;

constexpr std::size_t kLawCases = 1000;
constexpr std::size_t kArithmeticPairs = 1000;
constexpr std::size_t kBisimSteps = 50;
constexpr std::size_t kBoundInputs = 100;
constexpr std::size_t kTerminationInputs = 100;
constexpr std::size_t kTerminationFuel = 1'000'000;
constexpr std::size_t kTermCases = 500;
constexpr std::size_t kFilterModels = 200;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

Term term_of(std::string_view text, const std::vector<std::string>& vars, const NumericConfig& cfg = {}) {
  auto t = parse_term(text, vars, cfg);
  if (!t) throw std::runtime_error("bad term " + std::string(text) + ": " + t.error().message);
  return *t;
}

std::string show(const Value& v) { return to_string(v, {.nat_sugar = true}); }

// ------------------------------------------------------------------ 1

Outcome list_axioms() {
  struct Law {
    const char* name;
    const char* lhs;
    const char* rhs;
  };
  // conc(<>, x) = conc(x, <>) = x counts as one equation with two sides.
  const std::vector<Law> laws{
      {"tail(cons(x,y)) = x", "tail(cons(x, y))", "x"},
      {"head(cons(x,y)) = y", "head(cons(x, y))", "y"},
      {"tail(<>) = <>", "tail(<>)", "<>"},
      {"head(<>) = <>", "head(<>)", "<>"},
      {"conc(<>,x) = conc(x,<>) = x", "conc(<>, x)", "conc(x, <>)"},
      {"cons(conc(x,y),z) = conc(x,cons(y,z))", "cons(conc(x, y), z)", "conc(x, cons(y, z))"},
      {"conc(conc(x,y),z) = conc(x,conc(y,z))", "conc(conc(x, y), w)", "conc(x, conc(y, w))"},
  };
  const std::vector<std::string> vars{"x", "y", "z", "w"};
  const Term identity = term_of("x", vars);
  testgen::Rng rng(1);
  Outcome out;
  std::size_t checked = 0;
  for (const auto& law : laws) {
    const Term l = term_of(law.lhs, vars);
    const Term r = term_of(law.rhs, vars);
    const bool chain = std::string_view(law.name).find("= x") != std::string_view::npos &&
                       std::string_view(law.name).rfind("conc(<>", 0) == 0;
    for (std::size_t i = 0; i < kLawCases; ++i) {
      // x, y and w are lists; z is any value, since cons appends an element.
      const Env env{{"x", testgen::random_list(rng)},
                    {"y", testgen::random_list(rng)},
                    {"z", testgen::random_value(rng)},
                    {"w", testgen::random_list(rng)}};
      auto a = eval_term(l, env);
      auto b = eval_term(r, env);
      auto c = chain ? eval_term(identity, env) : a;
      if (!a || !b || !c || *a != *b || *a != *c) {
        out.fail(std::string(law.name) + " fails for x=" + show(env.at("x")) + " y=" + show(env.at("y")) +
                 " z=" + show(env.at("z")));
      }
      ++checked;
    }
  }
  out.detail = std::to_string(laws.size()) + " equations, " + std::to_string(checked) + " cases";
  return out;
}

// ------------------------------------------------------------------ 2

Outcome arithmetic() {
  Outcome out;
  std::size_t overflow = 0, total = 0;
  for (const NumericConfig cfg : {NumericConfig{2, 2}, NumericConfig{3, 3}}) {
    const oracle::Decimal d{cfg.integer_digits, cfg.fractional_digits};
    const EvalContext ctx{cfg, nullptr};
    const std::vector<std::string> vars{"x", "y"};
    const Term add_t = term_of("add(x, y)", vars, cfg);
    const Term min_t = term_of("min(<x, y>)", vars, cfg);
    const Term max_t = term_of("max(<x, y>)", vars, cfg);
    auto less_f = parse_formula("x < y", vars, cfg);
    if (!less_f) throw std::runtime_error("bad formula");
    testgen::Rng rng(static_cast<std::uint64_t>(100 + cfg.precision()));
    const std::string tag = "(" + std::to_string(cfg.integer_digits) + "," + std::to_string(cfg.fractional_digits) + ") ";
    for (std::size_t i = 0; i < kArithmeticPairs; ++i) {
      const auto lim = static_cast<std::size_t>(d.limit());
      std::int64_t a = static_cast<std::int64_t>(testgen::below(rng, lim));
      std::int64_t b = static_cast<std::int64_t>(testgen::below(rng, lim));
      // A few fixed corners: equal operands, zero, the largest value.
      if (i == 0) a = b = 0;
      if (i == 1) a = b = d.limit() - 1;
      if (i == 2) a = 1, b = d.limit() - 1;
      if (i == 3) b = a;
      ++total;
      auto x = encode_real(d.numeral(a), cfg);
      auto y = encode_real(d.numeral(b), cfg);
      if (!x || !y || oracle::from_value(*x) != d.digits(a) || oracle::from_value(*y) != d.digits(b)) {
        out.fail(tag + "encoding of " + d.text(a) + " or " + d.text(b));
        continue;
      }
      const Env env{{"x", *x}, {"y", *y}};
      const std::string pair = tag + d.text(a) + ", " + d.text(b);

      const Ordering want = a < b ? Ordering::Less : a > b ? Ordering::Greater : Ordering::Equal;
      auto lt = eval_formula(*less_f, env, ctx);
      if (compare(*x, *y, cfg) != want || !lt || *lt != (a < b)) out.fail(pair + ": compare");

      const auto sum = d.add(a, b);
      if (!sum) ++overflow;
      const std::vector<Value> sums{add(*x, *y, cfg), eval_term(add_t, env, ctx).value_or(Value::atom("error"))};
      for (const Value& got : sums) {
        if (sum ? oracle::from_value(got) != d.digits(*sum) : !is_fault(got)) out.fail(pair + ": add gave " + show(got));
      }
      const Value pairlist = Value::list({*x, *y});
      const auto lo = d.digits(std::min(a, b));
      const auto hi = d.digits(std::max(a, b));
      if (oracle::from_value(min_list(pairlist, cfg)) != lo ||
          oracle::from_value(eval_term(min_t, env, ctx).value_or(fault())) != lo)
        out.fail(pair + ": min");
      if (oracle::from_value(max_list(pairlist, cfg)) != hi ||
          oracle::from_value(eval_term(max_t, env, ctx).value_or(fault())) != hi)
        out.fail(pair + ": max");
    }
  }
  out.detail = std::to_string(total) + " pairs over 2 configurations, " + std::to_string(overflow) + " overflow to fault";
  return out;
}

// ------------------------------------------------------------------ 3

std::uint64_t tower(std::size_t i, std::uint64_t n) {
  std::uint64_t x = n;
  for (std::size_t j = 0; j < i; ++j) x = std::uint64_t{1} << x;
  return x;
}

Outcome blowup() {
  Outcome out;
  std::string detail;
  for (const auto& [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {1, 2}, {1, 3}, {2, 2}}) {
    // |model| = n + sum EXP^i(n); m = (n + 2k) + n + sum (EXP^i(n) - 1) + sum_{i<k} EXP^i(n).
    std::uint64_t model = n, steps = 2 * n + 2 * k;
    for (std::size_t i = 1; i <= k; ++i) {
      model += tower(i, n);
      steps += tower(i, n) - 1;
      if (i < k) steps += tower(i, n);
    }
    const std::string at = "(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
    auto predicted = expected_counts({k, n});
    if (!predicted || predicted->model_size != model || predicted->steps != steps) {
      out.fail(at + ": expected_counts disagrees with the closed form");
    }
    const Encoded e = exp_theory({k, n});
    auto run = run_chase(Value(), e.queue, e.theory, {.fuel = 10'000'000});
    if (run.state.status != Status::Terminated) out.fail(at + ": status " + to_string(run.state.status));
    if (run.state.model.size() != model || run.state.steps != steps) {
      out.fail(at + ": got (" + std::to_string(run.state.model.size()) + ", " + std::to_string(run.state.steps) +
               "), expected (" + std::to_string(model) + ", " + std::to_string(steps) + ")");
    }
    if (!detail.empty()) detail += " ";
    detail += at + "->(" + std::to_string(run.state.model.size()) + "," + std::to_string(run.state.steps) + ")";
  }
  out.detail = detail;
  return out;
}

// ------------------------------------------------------------------ 4

TMSpec load_tm(const std::string& name) {
  auto tm = parse_tm(testgen::read_text(testgen::fixture_path("tm/" + name + ".tm")));
  if (!tm) throw std::runtime_error("bad machine " + name);
  return *tm;
}

std::vector<std::string> trimmed(std::vector<std::string> tape, const std::string& blank) {
  while (!tape.empty() && tape.back() == blank) tape.pop_back();
  return tape;
}

// Compares the chase with the simulator before every MakeTMStep it runs and
// once at the end. Returns a description of the first mismatch.
std::optional<std::string> bisimulate(const TMSpec& tm, std::size_t max_steps, std::size_t& compared) {
  auto enc = encode_tm(tm);
  if (!enc) return "encoding failed: " + enc.error().message;
  oracle::TMSimulator sim(tm.blank, tm.start);
  for (const auto& t : tm.delta) sim.add(t.state, t.symbol, {t.next_state, t.write, t.move});
  ChaseState s = initial_state(Value(), enc->queue);
  std::size_t done = 0;
  auto same = [&]() -> std::optional<std::string> {
    auto c = read_configuration(s.model, tm);
    if (!c) return "unreadable configuration: " + c.error().message;
    ++compared;
    if (c->state != sim.state() || c->head != sim.head() || trimmed(c->tape, tm.blank) != trimmed(sim.tape(), tm.blank)) {
      return "configuration differs after " + std::to_string(done) + " machine steps";
    }
    return std::nullopt;
  };
  while (s.status == Status::Running && s.steps < 1'000'000) {
    const bool at_step = s.queue.size() > 0 && s.queue.head().is_list() && s.queue.head().size() == 3 &&
                         s.queue.head().head() == Value::atom("MakeTMStep");
    if (at_step) {
      if (auto bad = same()) return bad;
      if (done == max_steps) return std::nullopt;
      if (!sim.halted()) {
        sim.step();
        ++done;
      }
    }
    step(s, enc->theory);
  }
  if (s.status != Status::Terminated) return std::string("chase ended ") + to_string(s.status);
  if (auto bad = same()) return bad;
  if (!sim.halted()) return "chase terminated but the machine still runs";
  return std::nullopt;
}

Outcome machines() {
  Outcome out;
  const std::vector<std::string> halting{"halt_immediately", "three_step", "marker_return"};
  const std::vector<std::string> looping{"right_runner", "ping_pong"};
  std::size_t compared = 0;
  for (const auto& name : halting) {
    const TMSpec tm = load_tm(name);
    auto enc = encode_tm(tm);
    if (!enc) {
      out.fail(name + ": encoding failed");
      continue;
    }
    auto run = run_chase(Value(), enc->queue, enc->theory, {.fuel = 10'000});
    if (run.state.status != Status::Terminated) out.fail(name + ": " + to_string(run.state.status) + " at fuel 10^4");
    if (auto bad = bisimulate(tm, kBisimSteps, compared)) out.fail(name + ": " + *bad);
  }
  for (const auto& name : looping) {
    auto enc = encode_tm(load_tm(name));
    if (!enc) {
      out.fail(name + ": encoding failed");
      continue;
    }
    for (std::size_t fuel : {100u, 1'000u, 10'000u}) {
      auto run = run_chase(Value(), enc->queue, enc->theory, {.fuel = fuel, .elide_situations = true});
      if (run.state.status != Status::FuelExhausted || run.state.steps != fuel) {
        out.fail(name + ": " + to_string(run.state.status) + " at fuel " + std::to_string(fuel));
      }
    }
  }
  out.detail = "3 halting, 2 looping machines; " + std::to_string(compared) + " configurations compared";
  return out;
}

// ------------------------------------------------------------------ 5

Outcome verdicts() {
  Outcome out;
  // Machines with at least one transition have a MakeTMStep rule to cycle on.
  std::size_t cyclic = 0;
  for (const auto& name : testgen::bundled_machines()) {
    const TMSpec tm = load_tm(name);
    if (tm.delta.empty()) continue;
    auto enc = encode_tm(tm);
    if (!enc) {
      out.fail(name + ": encoding failed");
      continue;
    }
    const Verdict v = analyze(enc->theory);
    const oracle::GraphOracle o(enc->theory);
    bool through = false;
    for (const auto& x : v.cycle.cycle) through = through || (x.form == "TMcell" && x.name == "MakeTMStep");
    bool genuine = !v.cycle.cycle.empty();
    for (std::size_t i = 0; genuine && i < v.cycle.cycle.size(); ++i) {
      const auto& a = v.cycle.cycle[i];
      const auto& b = v.cycle.cycle[(i + 1) % v.cycle.cycle.size()];
      genuine = o.edges.count({{a.form, a.name}, {b.form, b.name}}) > 0;
    }
    if (v.cycle.acyclic || !o.cyclic() || !through || !genuine || v.verdict != VerdictClass::PossiblyNonTerminating) {
      out.fail(name + ": expected a cycle through (TMcell, MakeTMStep)");
    } else {
      ++cyclic;
    }
  }

  for (std::size_t k = 1; k <= 3; ++k) {
    const Encoded e = exp_theory({k, 2});
    const Verdict v = analyze(e.theory);
    // Component i: (Form_i, MakeExp_i), (Form_i-1, Duplicate), (Form_i, CreateDoc).
    std::vector<std::vector<Vertex>> want;
    for (std::size_t i = 1; i <= k; ++i) {
      std::vector<Vertex> c{{"Form_" + std::to_string(i), "MakeExp_" + std::to_string(i)},
                            {"Form_" + std::to_string(i - 1), "Duplicate"},
                            {"Form_" + std::to_string(i), "CreateDoc"}};
      std::sort(c.begin(), c.end());
      want.push_back(c);
    }
    std::sort(want.begin(), want.end());
    auto got = v.components;
    std::sort(got.begin(), got.end());
    const std::string at = "exp k=" + std::to_string(k);
    if (!v.cycle.acyclic) out.fail(at + ": not locally simple");
    if (got != want) out.fail(at + ": " + std::to_string(got.size()) + " components, expected the " + std::to_string(k) + " predicted");
    if (v.doc_generating.empty()) out.fail(at + ": empty document-generating set");
  }

  const Theory th = testgen::load_theory(testgen::fixture_path("theories/ticket_escalation.dth"));
  const Verdict v = analyze(th);
  if (!v.poly_bounded || v.verdict != VerdictClass::PolyBounded) out.fail("ticket_escalation: not poly-bounded");
  const auto pool = testgen::value_pool(th);
  testgen::Rng rng(5);
  std::uint64_t worst_steps = 0, worst_tuples = 0;
  for (std::size_t i = 0; i < kBoundInputs; ++i) {
    const Value model = testgen::random_model(rng, th, pool, 10);
    const Value queue = testgen::random_queue(rng, th, pool, 10, model.size() + 2);
    const EffectBounds b = effect_bounds(th, model, queue);
    if (!b.applicable) {
      out.fail("ticket_escalation: bounds inapplicable: " + b.reason);
      continue;
    }
    auto run = run_chase(model, queue, th, {.fuel = kTerminationFuel});
    if (run.state.status == Status::FuelExhausted || run.state.steps > b.steps || run.state.model.size() > b.tuples) {
      out.fail("ticket_escalation: observed (" + std::to_string(run.state.steps) + ", " +
               std::to_string(run.state.model.size()) + ") exceeds bounds (" + std::to_string(b.steps) + ", " +
               std::to_string(b.tuples) + ")");
    }
    worst_steps = std::max<std::uint64_t>(worst_steps, run.state.steps);
    worst_tuples = std::max<std::uint64_t>(worst_tuples, run.state.model.size());
  }
  out.detail = std::to_string(cyclic) + " machine theories cyclic; exp k=1..3 components exact; " +
               std::to_string(kBoundInputs) + " bounded runs, max observed steps " + std::to_string(worst_steps) +
               ", tuples " + std::to_string(worst_tuples);
  return out;
}

// ------------------------------------------------------------------ 6

Outcome termination() {
  Outcome out;
  std::string detail;
  testgen::Rng rng(6);
  for (const auto& name : testgen::bundled_theories()) {
    const Theory th = testgen::load_theory(testgen::fixture_path("theories/" + name + ".dth"));
    // Local simplicity is recomputed by brute force, not taken from the analyzer.
    if (oracle::GraphOracle(th).cyclic()) continue;
    const auto pool = testgen::value_pool(th);
    std::size_t terminated = 0, aborted = 0, exhausted = 0;
    for (std::size_t i = 0; i < kTerminationInputs; ++i) {
      const Value model = testgen::random_model(rng, th, pool, 10);
      const Value queue = testgen::random_queue(rng, th, pool, 10, model.size() + 2);
      auto run = run_chase(model, queue, th, {.fuel = kTerminationFuel});
      switch (run.state.status) {
        case Status::Terminated:
          ++terminated;
          break;
        case Status::Aborted:
          ++aborted;
          break;
        default:
          ++exhausted;
          out.fail(name + ": input " + std::to_string(i) + " ran out of fuel");
      }
    }
    if (!detail.empty()) detail += "; ";
    detail += name + " " + std::to_string(terminated) + " terminated/" + std::to_string(aborted) + " aborted/" +
              std::to_string(exhausted) + " fuel";
  }
  out.detail = detail;
  return out;
}

// ------------------------------------------------------------------ 7

std::optional<long> scaled(const oracle::RV& r, const NumericConfig& cfg) {
  return oracle::Decimal{cfg.integer_digits, cfg.fractional_digits}.value(r);
}

Outcome semantics() {
  Outcome out;
  testgen::Rng rng(7);
  std::string detail;
  const std::vector<std::pair<const char*, std::function<Term(testgen::TermGen&)>>> kinds{
      {"cond", [](testgen::TermGen& g) { return g.cond(3); }},
      {"bsearch", [](testgen::TermGen& g) { return g.bsearch(3); }},
      {"rec", [](testgen::TermGen& g) { return g.rec(3); }},
  };
  for (const auto& [kind, make] : kinds) {
    std::size_t defined = 0;
    for (std::size_t i = 0; i < kTermCases; ++i) {
      testgen::TermGen gen(rng);
      const Term t = make(gen);
      const Value x = testgen::random_list(rng, 3, 4);
      const Value y = testgen::random_value(rng, 3, 4);
      auto got = eval_term(t, {{"x", x}, {"y", y}});
      auto want = oracle::RefEval({{"x", oracle::from_value(x)}, {"y", oracle::from_value(y)}}).term(t);
      if (got.has_value() != want.has_value() || (want && oracle::from_value(*got) != *want)) {
        out.fail(std::string(kind) + ": " + to_string(t));
      }
      defined += want ? 1 : 0;
    }
    detail += std::string(kind) + " " + std::to_string(defined) + "/" + std::to_string(kTermCases) + " defined; ";
  }

  struct FilterCase {
    const char* theory;
    const char* filter;
    const char* form;
  };
  const std::vector<FilterCase> cases{{"order_fulfillment", "Drafts", "Invoice"},
                                      {"ticket_escalation", "Waiting", "Ticket"},
                                      {"purchase_approval", "Over", "Request"}};
  std::size_t models = 0, selected = 0;
  for (std::size_t i = 0; i < kFilterModels; ++i) {
    const FilterCase& c = cases[i % cases.size()];
    const Theory th = testgen::load_theory(testgen::fixture_path(std::string("theories/") + c.theory + ".dth"));
    const auto pool = testgen::value_pool(th);
    const Value model = testgen::random_model(rng, th, pool, 12);
    Value params = testgen::pick(rng, pool);
    if (std::string_view(c.filter) == "Over") {
      params = Value::list({*encode_real(testgen::pick(rng, std::vector<std::string>{"0", "40", "99.5"}), th.precision)});
    }
    auto got = eval_filter(c.filter, Value::atom(c.form), params, model, th);
    const oracle::RV p = oracle::from_value(params);
    const oracle::RV want =
        oracle::groupby_filter(oracle::from_value(model), oracle::RV::make_atom(c.form), [&](const oracle::RV& t) {
          const oracle::RV& doc = t.items[2];
          const std::string_view f = c.filter;
          if (f == "Drafts") return oracle::field_of(doc, "Status") == oracle::RV::list({oracle::RV::make_atom("Draft")});
          if (f == "Waiting") return oracle::field_of(doc, "Stage") == oracle::RV::list({oracle::RV::make_atom("New")});
          auto amount = oracle::field_of(doc, "Amount");
          if (!amount || amount->items.empty() || p.items.empty()) return false;
          auto lhs = scaled(p.items.back(), th.precision);
          auto rhs = scaled(amount->items.back(), th.precision);
          return lhs && rhs && *lhs < *rhs;
        });
    ++models;
    if (!got || oracle::from_value(*got) != want) out.fail(std::string(c.filter) + " differs on " + show(model));
    selected += want.items.size();
  }
  out.detail = detail + std::to_string(models) + " filter models, " + std::to_string(selected) + " IDs selected";
  return out;
}

// ------------------------------------------------------------------ 8

Outcome round_trip() {
  Outcome out;
  std::vector<std::pair<std::string, std::string>> sources;
  for (const char* dir : {"theories", "generated"}) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(testgen::fixture_path(dir))) {
      if (e.path().extension() == ".dth") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) sources.emplace_back(f.filename().string(), testgen::read_text(f.string()));
  }
  for (const auto& [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {1, 2}, {1, 3}, {2, 2}}) {
    sources.emplace_back("exp k=" + std::to_string(k) + " n=" + std::to_string(n), print_theory(exp_theory({k, n}).theory));
  }
  for (const auto& name : testgen::bundled_machines()) {
    auto enc = encode_tm(load_tm(name));
    if (enc) sources.emplace_back("tm " + name, print_theory(enc->theory));
  }
  for (const auto& [label, text] : sources) {
    auto first = parse_theory(text);
    if (!first) {
      out.fail(label + ": does not parse");
      continue;
    }
    const std::string printed = print_theory(*first);
    auto second = parse_theory(printed);
    if (!second || !(*second == *first) || print_theory(*second) != printed) out.fail(label + ": not a fixpoint");
  }
  out.detail = std::to_string(sources.size()) + " theories";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "list axioms", kListAxiomsLimit, list_axioms},
      {2, "fixed-precision arithmetic", kArithmeticLimit, arithmetic},
      {3, "exponential blowup counts", kBlowupLimit, blowup},
      {4, "Turing machine simulation", kMachinesLimit, machines},
      {5, "analyzer verdicts", kVerdictsLimit, verdicts},
      {6, "termination of locally simple theories", kTerminationLimit, termination},
      {7, "term and filter semantics", kSemanticsLimit, semantics},
      {8, "theory round trip", kRoundTripLimit, round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit) + " s");
    std::printf("%s %d %s: %s (%.3f s, limit %.0f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
