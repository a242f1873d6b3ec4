#include <doctest.h>

#include "../support/generators.hpp"
#include "doctheory/chase.hpp"
#include "doctheory/dsl.hpp"
#include "doctheory/reductions.hpp"

using namespace doctheory;

namespace {

Value v(std::string_view text) {
  auto r = parse_value(text);
  REQUIRE_MESSAGE(r.has_value(), r.error().message);
  return *r;
}

Theory theory(const std::string& name) { return testgen::load_theory(testgen::fixture_path("theories/" + name + ".dth")); }

Value queue_of(const std::string& name) { return testgen::load_values(testgen::fixture_path("theories/" + name + ".queue")); }

bool is_prefix(const Value& a, const Value& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("empty queue terminates at once") {
  const Theory th = theory("order_fulfillment");
  auto run = run_chase(Value(), Value(), th, {.trace = true});
  CHECK(run.state.status == Status::Terminated);
  CHECK(run.state.steps == 0);
  REQUIRE(run.trace.size() == 1);
  CHECK(run.trace[0].step == 1);
  CHECK(run.trace[0].instruction == Value());
}

TEST_CASE("a single creation adds the blank document as ID 1") {
  const Theory th = theory("order_fulfillment");
  const Value create = v("<Order, CreateDoc>");
  auto run = run_chase(Value(), Value::list({create}), th);
  CHECK(run.state.status == Status::Terminated);
  CHECK(run.state.steps == 1);
  CHECK(run.state.model == Value::list({make_tuple(Value::list({create}), Value::atom("Order"), blank(Value::atom("Order"), th),
                                                   Value::nat(1))}));
}

TEST_CASE("order fulfilment end to end") {
  const Theory th = theory("order_fulfillment");
  auto run = run_chase(Value(), queue_of("order_fulfillment"), th);
  REQUIRE(run.state.status == Status::Terminated);
  CHECK(run.state.steps == 11);
  CHECK(run.state.model.size() == 7);
  const Value& m = run.state.model;
  auto status = [&](std::size_t id) { return *get_field_value(Value::nat(id), Value::atom("Status"), m); };
  CHECK(status(1) == v("<Approved>"));
  CHECK(status(2) == v("<Billed>"));
  CHECK(status(3) == v("<Shipped>"));
  CHECK(*get_field_value(Value::nat(1), Value::atom("Note"), m) == v("<billed>"));
}

TEST_CASE("an invalid instruction aborts and restores the model") {
  const Theory th = theory("order_fulfillment");
  const Value initial = testgen::load_values(testgen::fixture_path("queues/order_initial.model"));
  const Value queue = testgen::load_values(testgen::fixture_path("queues/order_bogus.queue"));
  auto run = run_chase(initial, queue, th, {.trace = true});
  CHECK(run.state.status == Status::Aborted);
  CHECK(run.state.reason == AbortReason::InvalidInstruction);
  CHECK(run.state.model == initial);
  CHECK(run.state.queue == Value());
  CHECK(run.state.steps == 2);
  CHECK(replay(initial, run.trace) == initial);
}

TEST_CASE("abort reasons") {
  const Theory th = theory("order_fulfillment");
  auto reason = [&](std::string_view q) {
    auto run = run_chase(Value(), v(q), th);
    CHECK(run.state.status == Status::Aborted);
    return run.state.reason;
  };
  CHECK(reason("<<Nope, CreateDoc>>") == AbortReason::UnknownForm);
  CHECK(reason("<<<a>, Status, nat(1), SetField>>") == AbortReason::BadSetField);
  CHECK(reason("<<<a>, Colour, nat(1), SetField>, <Order, CreateDoc>>") == AbortReason::BadSetField);
  CHECK(reason("<<<a, b>, Status, nat(1), SetField>, <Order, CreateDoc>>") == AbortReason::BadSetField);
  CHECK(reason("<<<>, nat(1), Unknown>>") == AbortReason::InvalidInstruction);
  CHECK(reason("<atom>") == AbortReason::InvalidInstruction);
}

TEST_CASE("the first matching rule wins") {
  auto th = parse_theory(R"(theory t {
    fields { A: ?; }
    forms { F { A = <>; } }
    transactions { T; }
    on trans F.T when params = <> emit { set A := <first>; }
    on trans F.T emit { set A := <second>; }
  })");
  REQUIRE(th.has_value());
  const Value model = Value::list({make_tuple(Value(), Value::atom("F"), blank(Value::atom("F"), *th), Value::nat(1))});
  auto d = fire_exec_trans(Value::atom("T"), Value::nat(1), Value(), Value(), model, *th);
  REQUIRE(d.has_value());
  CHECK(d->rule == std::optional<std::size_t>(0));
  CHECK(d->appended == v("<<<first>, A, nat(1), SetField>>"));
  auto e = fire_exec_trans(Value::atom("T"), Value::nat(1), v("<x>"), Value(), model, *th);
  REQUIRE(e.has_value());
  CHECK(e->rule == std::optional<std::size_t>(1));
  auto none = fire_set_field_trigger(Value::nat(1), Value::atom("A"), Value(), v("<q>"), model, *th);
  REQUIRE(none.has_value());
  CHECK(none->branch == Branch::DefaultKeep);
  CHECK(none->queue == v("<q>"));
}

TEST_CASE("MakeTMStep on the first cell clears the queue") {
  auto tm = parse_tm(testgen::read_text(testgen::fixture_path("tm/three_step.tm")));
  REQUIRE(tm.has_value());
  auto enc = encode_tm(*tm);
  REQUIRE(enc.has_value());
  const Theory& th = enc->theory;
  const Value cell = blank(Value::atom("TMcell"), th);
  const Value model = Value::list({make_tuple(Value(), Value::atom("TMcell"), cell, Value::nat(1)),
                                   make_tuple(Value(), Value::atom("TMcell"), cell, Value::nat(2))});
  auto d = fire_exec_trans(Value::atom("MakeTMStep"), Value::nat(1), Value(), v("<<TMcell, CreateDoc>>"), model, th);
  REQUIRE(d.has_value());
  CHECK(d->cleared);
  CHECK(d->queue == Value());
}

TEST_CASE("Duplicate issues one creation per selected document") {
  const Encoded e = exp_theory({1, 3});
  const Value f0 = Value::atom("Form_0");
  const Value f1 = Value::atom("Form_1");
  Value model = Value::list({make_tuple(Value(), f0, Value(), Value::nat(1))});
  for (std::size_t id = 2; id <= 4; ++id) model = model.cons(make_tuple(Value(), f1, Value(), Value::nat(id)));
  auto d = fire_exec_trans(Value::atom("Duplicate"), Value::nat(1), Value(), Value(), model, e.theory);
  REQUIRE(d.has_value());
  const Value create = Value::list({f1, create_doc_tag()});
  CHECK(d->appended == Value::list({create, create, create}));
}

TEST_CASE("filter loops put the first selected ID at the head") {
  const Theory th = theory("order_fulfillment");
  Value model;
  for (std::size_t id = 1; id <= 3; ++id) {
    model = model.cons(make_tuple(Value(), Value::atom("Invoice"), blank(Value::atom("Invoice"), th), Value::nat(id)));
  }
  model = model.cons(make_tuple(Value(), Value::atom("Shipment"), blank(Value::atom("Shipment"), th), Value::nat(4)));
  auto ids = eval_filter("Drafts", Value::atom("Invoice"), Value(), model, th);
  REQUIRE(ids.has_value());
  CHECK(*ids == Value::list({Value::nat(3), Value::nat(2), Value::nat(1)}));
  auto d = fire_set_field_trigger(Value::nat(4), Value::atom("Status"), v("<Shipped>"), Value(), model, th);
  REQUIRE(d.has_value());
  REQUIRE(d->appended.size() == 3);
  CHECK(d->appended.head() == v("<<>, nat(3), Bill>"));
  CHECK(d->appended.at(0) == v("<<>, nat(1), Bill>"));
}

TEST_CASE("fuel bounds the number of processed instructions") {
  auto tm = parse_tm(testgen::read_text(testgen::fixture_path("tm/right_runner.tm")));
  REQUIRE(tm.has_value());
  auto enc = encode_tm(*tm);
  REQUIRE(enc.has_value());
  for (std::size_t fuel : {1u, 7u, 50u}) {
    auto run = run_chase(Value(), enc->queue, enc->theory, {.fuel = fuel});
    CHECK(run.state.status == Status::FuelExhausted);
    CHECK(run.state.steps == fuel);
  }
}

TEST_CASE("traces replay, runs are deterministic and models only grow") {
  testgen::Rng rng(77);
  for (const auto& name : testgen::bundled_theories()) {
    CAPTURE(name);
    const Theory th = theory(name);
    const auto pool = testgen::value_pool(th);
    int completed = 0;
    for (int i = 0; i < 60; ++i) {
      const Value model = testgen::random_model(rng, th, pool, 8);
      const Value queue = testgen::random_queue(rng, th, pool, 8, model.size() + 2);
      const ChaseOptions opts{.fuel = 1000, .trace = true};
      auto a = run_chase(model, queue, th, opts);
      auto b = run_chase(model, queue, th, opts);
      CHECK(a.state.model == b.state.model);
      CHECK(a.state.steps == b.state.steps);
      CHECK(a.state.status == b.state.status);
      CHECK(replay(model, a.trace) == a.state.model);
      CHECK(is_prefix(model, a.state.model));
      std::size_t processed = 0;
      for (const auto& e : a.trace) processed += e.instruction.size() > 0 || e.status == Status::Aborted ? 1 : 0;
      CHECK(processed == a.state.steps);
      if (a.state.status == Status::Terminated) {
        ++completed;
        CHECK(a.state.queue == Value());
      }
    }
    CHECK(completed > 10);
  }
}

TEST_CASE("eliding situations changes nothing else") {
  testgen::Rng rng(5);
  for (const auto& name : testgen::bundled_theories()) {
    const Theory th = theory(name);
    const auto pool = testgen::value_pool(th);
    for (int i = 0; i < 30; ++i) {
      const Value queue = testgen::random_queue(rng, th, pool, 8, 4);
      auto full = run_chase(Value(), queue, th, {.fuel = 5000});
      auto lean = run_chase(Value(), queue, th, {.fuel = 5000, .elide_situations = true});
      CHECK(full.state.status == lean.state.status);
      CHECK(full.state.steps == lean.state.steps);
      REQUIRE(full.state.model.size() == lean.state.model.size());
      for (std::size_t t = 0; t < full.state.model.size(); ++t) {
        const Value& f = full.state.model.at(t);
        const Value& l = lean.state.model.at(t);
        CHECK(l.at(0) == Value());
        CHECK(l.at(1) == f.at(1));
        CHECK(l.at(2) == f.at(2));
        CHECK(l.at(3) == f.at(3));
      }
    }
  }
}

TEST_CASE("situations record the tuple-producing history") {
  const Theory th = theory("order_fulfillment");
  auto run = run_chase(Value(), queue_of("order_fulfillment"), th);
  const Value& m = run.state.model;
  for (std::size_t t = 1; t < m.size(); ++t) {
    CHECK(is_prefix(m.at(t - 1).at(0), m.at(t).at(0)));
    CHECK(m.at(t).at(0).size() == t + 1);
  }
}
