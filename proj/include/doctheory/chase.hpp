#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "doctheory/result.hpp"
#include "doctheory/theory.hpp"
#include "doctheory/value.hpp"

namespace doctheory {

enum class Status { Running, Terminated, Aborted, FuelExhausted };

enum class AbortReason { None, InvalidInstruction, UnknownForm, BadSetField, EvalError };

const char* to_string(Status s);
const char* to_string(AbortReason r);

/// <model, queue> plus what a run needs around it. Aborting restores
/// `initial_model` and empties the queue.
struct ChaseState {
  Value initial_model;
  Value model;
  Value queue;
  /// Instructions processed so far.
  std::size_t steps = 0;
  Status status = Status::Running;
  AbortReason reason = AbortReason::None;
  std::string message;
};

ChaseState initial_state(const Value& model, const Value& queue);

/// How a daemon answered an event.
enum class Branch { None, Rule, DefaultKeep, DefaultSkip };

struct TraceEvent {
  /// 1-based index of the processed instruction; the final empty-queue
  /// check carries steps + 1.
  std::size_t step = 0;
  /// The processed instruction; the empty list for the final check.
  Value instruction;
  Branch branch = Branch::None;
  /// Index into the theory's set or trans rules when branch == Rule.
  std::optional<std::size_t> rule;
  /// conc(rest, appended) is the new queue unless `queue_cleared`.
  Value appended;
  bool queue_cleared = false;
  /// Tuple added to the model by this step.
  std::optional<Value> delta;
  Status status = Status::Running;
  std::string message;
};

struct ChaseOptions {
  std::size_t fuel = 1'000'000;
  bool trace = false;
  /// Store the empty list instead of the growing situation history.
  bool elide_situations = false;
};

struct ChaseRun {
  ChaseState state;
  std::vector<TraceEvent> trace;
};

/// Result of one daemon call.
struct DaemonResult {
  Value queue;
  Branch branch = Branch::None;
  std::optional<std::size_t> rule;
  Value appended;
  /// The branch replaced the queue with the empty list.
  bool cleared = false;
};

/// SetField daemon for a field change of `doc_id` (first matching rule wins).
Result<DaemonResult> fire_set_field_trigger(const Value& doc_id, const Value& field, const Value& value,
                                            const Value& queue, const Value& model, const Theory& th);

/// ExecTrans daemon for transaction `name` on `doc_id`.
Result<DaemonResult> fire_exec_trans(const Value& name, const Value& doc_id, const Value& params, const Value& queue,
                                     const Value& model, const Theory& th);

/// One rewrite <model, queue> -> <model', queue'>. Requires Running.
void step(ChaseState& s, const Theory& th, const ChaseOptions& options = {}, TraceEvent* event = nullptr);

/// Steps until the queue empties, an abort, or `options.fuel` processed
/// instructions. The empty-queue check runs before the fuel check.
ChaseRun run_chase(const Value& model, const Value& queue, const Theory& th, const ChaseOptions& options = {});

/// Final model obtained by applying a trace's deltas to `initial_model`.
Value replay(const Value& initial_model, const std::vector<TraceEvent>& trace);

}  // namespace doctheory
