#include "doctheory/chase.hpp"

#include "doctheory/docmodel.hpp"
#include "doctheory/eval.hpp"

namespace doctheory {

const char* to_string(Status s) {
  switch (s) {
    case Status::Running:
      return "running";
    case Status::Terminated:
      return "terminated";
    case Status::Aborted:
      return "aborted";
    case Status::FuelExhausted:
      return "fuel-exhausted";
  }
  return "unknown";
}

const char* to_string(AbortReason r) {
  switch (r) {
    case AbortReason::None:
      return "none";
    case AbortReason::InvalidInstruction:
      return "invalid-instruction";
    case AbortReason::UnknownForm:
      return "unknown-form";
    case AbortReason::BadSetField:
      return "bad-set-field";
    case AbortReason::EvalError:
      return "eval-error";
  }
  return "unknown";
}

ChaseState initial_state(const Value& model, const Value& queue) {
  ChaseState s;
  s.initial_model = model;
  s.model = model;
  s.queue = queue;
  return s;
}

namespace {

Value make_create(const std::string& form) { return Value::list({Value::atom(form), create_doc_tag()}); }

Result<Value> eval(const Term& t, const Env& env, const Theory& th) { return eval_term(t, env, th.context()); }

// Instructions produced by one instruction term, in emission order.
Result<Value> expand(const InstructionTerm& it, const Env& env, const Theory& th) {
  return std::visit(
      [&](const auto& s) -> Result<Value> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, instr::SetField>) {
          auto value = eval(s.value, env, th);
          if (!value) return value.error();
          Result<Value> target = s.target ? eval(*s.target, env, th) : Result<Value>(env.at("docID"));
          if (!target) return target.error();
          return Value::list({Value::list({*value, Value::atom(s.field), *target, set_field_tag()})});
        } else if constexpr (std::is_same_v<S, instr::Create>) {
          return Value::list({make_create(s.form)});
        } else if constexpr (std::is_same_v<S, instr::Transaction>) {
          auto target = eval(s.target, env, th);
          if (!target) return target.error();
          auto params = eval(s.params, env, th);
          if (!params) return params.error();
          return Value::list({Value::list({*params, *target, Value::atom(s.name)})});
        } else {
          auto fparams = eval(s.filter_params, env, th);
          if (!fparams) return fparams.error();
          auto ids = eval_filter(s.filter, Value::atom(s.form), *fparams, env.at("model"), th);
          if (!ids) return ids.error();
          // g(cons(a, b)) = conc(<instr(b)>, g(a)): the first selected ID
          // ends up at the head and runs first.
          Value out;
          if (const auto* t = std::get_if<instr::FilterLoop::EmitTrans>(&s.body)) {
            auto params = eval(t->params, env, th);
            if (!params) return params.error();
            const Value name = Value::atom(t->name);
            for (const auto& id : ids->elements()) out = Value::list({Value::list({*params, id, name})}).conc(out);
          } else {
            const Value c = make_create(std::get<instr::FilterLoop::EmitCreate>(s.body).form);
            for (std::size_t i = 0; i < ids->size(); ++i) out = out.cons(c);
          }
          return out;
        }
      },
      it);
}

Result<DaemonResult> fire(DaemonKind kind, const Value& trigger, const Value& doc_id, const Env& env,
                          const Value& queue, const Value& model, const Theory& th) {
  auto tuple = get_doc_by_id(doc_id, model);
  if (!tuple) return tuple.error();
  auto form = form_of(*tuple);
  if (!form) return form.error();

  const auto& rules = th.rules(kind);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const DaemonRule& r = rules[i];
    if (!form->is_atom() || form->atom_name() != r.form) continue;
    if (!trigger.is_atom() || trigger.atom_name() != r.trigger) continue;
    auto holds = eval_formula(r.guard, env, th.context());
    if (!holds) return EvalError{"guard of rule " + std::to_string(i + 1) + ": " + holds.error().message};
    if (!*holds) continue;
    DaemonResult out;
    out.branch = Branch::Rule;
    out.rule = i;
    if (r.clears_queue) {
      out.cleared = true;
      return out;
    }
    for (const auto& it : r.extension) {
      auto part = expand(it, env, th);
      if (!part) return EvalError{"rule " + std::to_string(i + 1) + ": " + part.error().message};
      out.appended = out.appended.conc(*part);
    }
    out.queue = queue.conc(out.appended);
    return out;
  }

  const DefaultBranch d = kind == DaemonKind::SetField ? th.set_default : th.trans_default;
  DaemonResult out;
  if (d == DefaultBranch::SkipQueue) {
    out.branch = Branch::DefaultSkip;
    out.cleared = true;
  } else {
    out.branch = Branch::DefaultKeep;
    out.queue = queue;
  }
  return out;
}

void abort(ChaseState& s, AbortReason reason, std::string message, TraceEvent* event) {
  s.status = Status::Aborted;
  s.reason = reason;
  s.message = std::move(message);
  s.model = s.initial_model;
  s.queue = Value();
  if (event != nullptr) {
    event->status = Status::Aborted;
    event->message = std::string(to_string(reason)) + ": " + s.message;
    event->queue_cleared = true;
    event->delta.reset();
  }
}

}  // namespace

Result<DaemonResult> fire_set_field_trigger(const Value& doc_id, const Value& field, const Value& value,
                                            const Value& queue, const Value& model, const Theory& th) {
  const Env env{{"docID", doc_id}, {"fValue", value}, {"model", model}};
  return fire(DaemonKind::SetField, field, doc_id, env, queue, model, th);
}

Result<DaemonResult> fire_exec_trans(const Value& name, const Value& doc_id, const Value& params, const Value& queue,
                                     const Value& model, const Theory& th) {
  const Env env{{"docID", doc_id}, {"params", params}, {"model", model}};
  return fire(DaemonKind::ExecTrans, name, doc_id, env, queue, model, th);
}

void step(ChaseState& s, const Theory& th, const ChaseOptions& options, TraceEvent* event) {
  if (s.status != Status::Running) return;
  if (event != nullptr) *event = TraceEvent{};
  if (s.queue.size() == 0) {
    s.status = Status::Terminated;
    if (event != nullptr) {
      event->step = s.steps + 1;
      event->status = s.status;
    }
    return;
  }

  const Value instruction = s.queue.head();
  const Value rest = s.queue.tail();
  ++s.steps;
  if (event != nullptr) {
    event->step = s.steps;
    event->instruction = instruction;
  }

  auto situation = [&]() -> Value {
    if (options.elide_situations) return Value();
    auto cur = current_situation(s.model);
    return cur ? cur->cons(instruction) : Value().cons(instruction);
  };
  auto append = [&](const Value& tuple) {
    s.model = s.model.cons(tuple);
    if (event != nullptr) event->delta = tuple;
  };
  auto apply = [&](const DaemonResult& d) {
    s.queue = d.queue;
    if (event != nullptr) {
      event->branch = d.branch;
      event->rule = d.rule;
      event->appended = d.appended;
      event->queue_cleared = d.cleared;
    }
  };

  if (!instruction.is_list() || instruction.size() == 0 || !instruction.head().is_atom()) {
    abort(s, AbortReason::InvalidInstruction, "not an instruction: " + to_string(instruction), event);
    return;
  }
  const Value tag = instruction.head();

  if (tag == create_doc_tag()) {
    if (instruction.size() != 2) {
      abort(s, AbortReason::InvalidInstruction, "CreateDoc takes one argument: " + to_string(instruction), event);
      return;
    }
    const Value form = instruction.at(0);
    const Value doc = blank(form, th);
    if (is_fault(doc)) {
      abort(s, AbortReason::UnknownForm, "unknown form " + to_string(form), event);
      return;
    }
    auto last = get_last_doc_id(s.model);
    if (!last) {
      abort(s, AbortReason::EvalError, last.error().message, event);
      return;
    }
    const Value id = last->cons(Value());
    append(make_tuple(situation(), form, doc, id));
    s.queue = rest;
    return;
  }

  if (tag == set_field_tag()) {
    if (instruction.size() != 4) {
      abort(s, AbortReason::InvalidInstruction, "SetField takes three arguments: " + to_string(instruction), event);
      return;
    }
    const Value value = instruction.at(0);
    const Value field = instruction.at(1);
    const Value id = instruction.at(2);
    auto tuple = get_doc_by_id(id, s.model);
    if (!tuple) {
      abort(s, AbortReason::EvalError, tuple.error().message, event);
      return;
    }
    if (is_fault(*tuple)) {
      abort(s, AbortReason::BadSetField, "no document with ID " + to_string(id, {.nat_sugar = true}), event);
      return;
    }
    auto updated = replace_field_value(tuple->at(2), field, value);
    if (!updated) {
      abort(s, AbortReason::EvalError, updated.error().message, event);
      return;
    }
    if (is_fault(*updated)) {
      abort(s, AbortReason::BadSetField, "document has no field " + to_string(field), event);
      return;
    }
    if (!check_field(make_field(value, field), th)) {
      abort(s, AbortReason::BadSetField,
            "value " + to_string(value, {.nat_sugar = true}) + " violates the cardinality of " + to_string(field),
            event);
      return;
    }
    const Value before = s.model;
    auto d = fire_set_field_trigger(id, field, value, rest, before, th);
    if (!d) {
      abort(s, AbortReason::EvalError, d.error().message, event);
      return;
    }
    append(make_tuple(situation(), tuple->at(1), *updated, id));
    apply(*d);
    return;
  }

  if (tag.is_atom() && th.has_transaction(tag.atom_name()) && instruction.size() == 3) {
    auto d = fire_exec_trans(tag, instruction.at(1), instruction.at(0), rest, s.model, th);
    if (!d) {
      abort(s, AbortReason::EvalError, d.error().message, event);
      return;
    }
    apply(*d);
    return;
  }

  abort(s, AbortReason::InvalidInstruction, "not an instruction: " + to_string(instruction, {.nat_sugar = true}),
        event);
}

ChaseRun run_chase(const Value& model, const Value& queue, const Theory& th, const ChaseOptions& options) {
  ChaseRun run;
  run.state = initial_state(model, queue);
  ChaseState& s = run.state;
  while (s.status == Status::Running) {
    if (s.queue.size() > 0 && s.steps >= options.fuel) {
      s.status = Status::FuelExhausted;
      break;
    }
    if (options.trace) {
      TraceEvent e;
      step(s, th, options, &e);
      run.trace.push_back(std::move(e));
    } else {
      step(s, th, options);
    }
  }
  return run;
}

Value replay(const Value& initial_model, const std::vector<TraceEvent>& trace) {
  Value model = initial_model;
  for (const auto& e : trace) {
    if (e.status == Status::Aborted) return initial_model;
    if (e.delta) model = model.cons(*e.delta);
  }
  return model;
}

}  // namespace doctheory
