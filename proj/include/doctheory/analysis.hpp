#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doctheory/result.hpp"
#include "doctheory/theory.hpp"
#include "doctheory/value.hpp"

namespace doctheory {

/// (form, name) with name a field, a transaction or CreateDoc.
struct Vertex {
  std::string form;
  std::string name;
  auto operator<=>(const Vertex&) const = default;
};

std::string to_string(const Vertex& v);

/// An instruction term inside a rule extension.
struct TermLocation {
  DaemonKind kind = DaemonKind::ExecTrans;
  std::size_t rule = 0;
  std::size_t term = 0;
  auto operator<=>(const TermLocation&) const = default;
};

std::string to_string(const TermLocation& loc);

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  TermLocation source;
};

struct DependencyGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::optional<std::size_t> find(std::string_view form, std::string_view name) const;
  /// Deduplicated successor lists indexed like `vertices`.
  std::vector<std::vector<std::size_t>> successors() const;
};

DependencyGraph dependency_graph(const Theory& th);

/// Vertices an instruction term is a (form, name)-instruction for. Terms
/// aimed at the rule's own docID stay within the rule's form; any other
/// target may be a document of any form.
std::vector<Vertex> term_targets(const DaemonRule& rule, const InstructionTerm& term, const Theory& th);

struct CycleCheck {
  bool acyclic = true;
  /// v0, ..., vn with an edge vi -> vi+1 and from vn back to v0.
  std::vector<Vertex> cycle;
};

CycleCheck find_cycle(const DependencyGraph& g);
CycleCheck is_locally_simple(const Theory& th);

/// Weakly connected components with at least two vertices, each sorted.
std::vector<std::vector<Vertex>> nonsingleton_components(const DependencyGraph& g);

/// Number of vertices on the longest path starting at each vertex.
/// Requires an acyclic graph.
Result<std::vector<std::size_t>> longest_paths(const DependencyGraph& g);

/// Rank of a constant instruction wrt the theory and model: the longest
/// path from (F, name) has rank + 1 vertices, maximised over the forms F of
/// tuples in the model; 0 for CreateDoc or when no such tuple exists.
Result<std::size_t> rank(const Value& instruction, const Theory& th, const Value& model);

/// Rank over an explicit set of candidate forms instead of a model.
Result<std::size_t> rank_over_forms(const Value& instruction, const Theory& th, const std::vector<std::string>& forms);

/// Least fixpoint of the document-generating definition. Requires a
/// locally simple theory.
Result<std::vector<TermLocation>> document_generating(const Theory& th);

/// Maximal number of instruction terms in one rule extension.
std::size_t max_extension_terms(const Theory& th);

struct EffectBounds {
  bool applicable = false;
  /// Why the bounds do not apply.
  std::string reason;

  std::uint64_t N = 0;
  std::uint64_t k = 0;
  std::uint64_t model_tuples = 0;
  std::uint64_t model_documents = 0;
  std::uint64_t queue_size = 0;

  /// Processed instructions until the queue empties.
  std::uint64_t steps = 0;
  /// Distinct documents in the final model.
  std::uint64_t documents = 0;
  /// Tuples in the final model.
  std::uint64_t tuples = 0;
  /// Some bound exceeded 2^64 - 1 and was clamped.
  bool saturated = false;
};

EffectBounds effect_bounds(const Theory& th, const Value& model, const Value& queue);

enum class VerdictClass { PolyBounded, TerminatingUnbounded, PossiblyNonTerminating };

const char* to_string(VerdictClass c);
/// 0, 4 or 5.
int exit_code(VerdictClass c);

struct Verdict {
  DependencyGraph graph;
  CycleCheck cycle;
  std::vector<TermLocation> doc_generating;
  bool poly_bounded = false;
  std::size_t N = 0;
  std::vector<std::vector<Vertex>> components;
  std::optional<EffectBounds> bounds;
  VerdictClass verdict = VerdictClass::PossiblyNonTerminating;
};

/// All analyses; bounds are computed when a queue is supplied.
Verdict analyze(const Theory& th, const std::optional<Value>& model = std::nullopt,
                const std::optional<Value>& queue = std::nullopt);

}  // namespace doctheory
