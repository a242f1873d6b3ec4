#include "doctheory/report.hpp"

#include "doctheory/docmodel.hpp"

namespace doctheory {

namespace {

std::string render(const Value& v) { return to_string(v, {.nat_sugar = true}); }

const char* instruction_kind(const TraceEvent& e, const Theory& th) {
  const Value& i = e.instruction;
  if (i.is_list() && i.size() == 0 && e.status == Status::Terminated) return "end";
  if (!i.is_list() || i.size() == 0 || !i.head().is_atom()) return "invalid";
  if (i.head() == create_doc_tag()) return "create";
  if (i.head() == set_field_tag()) return "set";
  if (th.has_transaction(i.head().atom_name())) return "trans";
  return "invalid";
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::None:
      return "none";
    case Branch::Rule:
      return "rule";
    case Branch::DefaultKeep:
      return "default-keep";
    case Branch::DefaultSkip:
      return "default-skip";
  }
  return "none";
}

nlohmann::json vertex_json(const Vertex& v) { return nlohmann::json::array({v.form, v.name}); }

nlohmann::json location_json(const TermLocation& l) {
  return {{"rule_kind", l.kind == DaemonKind::SetField ? "set" : "trans"},
          {"rule", l.rule + 1},
          {"term", l.term + 1}};
}

}  // namespace

nlohmann::json trace_header_json(const Theory& th, const ChaseState& start) {
  return {{"schema", kTraceSchema},
          {"type", "header"},
          {"theory", th.name},
          {"model_size", start.model.size()},
          {"queue_size", start.queue.size()}};
}

nlohmann::json trace_event_json(const TraceEvent& e, const Theory& th) {
  nlohmann::json j{{"schema", kTraceSchema},
                   {"type", "event"},
                   {"step", e.step},
                   {"kind", instruction_kind(e, th)},
                   {"instruction", render(e.instruction)},
                   {"branch", branch_name(e.branch)},
                   {"status", to_string(e.status)}};
  if (e.rule) {
    // The rule list is fixed by the instruction kind.
    const bool set = e.instruction.is_list() && e.instruction.size() > 0 && e.instruction.head() == set_field_tag();
    const DaemonRule& r = th.rules(set ? DaemonKind::SetField : DaemonKind::ExecTrans).at(*e.rule);
    j["rule"] = {{"kind", set ? "set" : "trans"}, {"index", *e.rule + 1}, {"form", r.form}, {"trigger", r.trigger}};
  } else {
    j["rule"] = nullptr;
  }
  nlohmann::json appended = nlohmann::json::array();
  for (const auto& a : e.appended.elements()) appended.push_back(render(a));
  j["appended"] = std::move(appended);
  j["queue_cleared"] = e.queue_cleared;
  j["delta"] = e.delta ? nlohmann::json(render(*e.delta)) : nlohmann::json(nullptr);
  if (!e.message.empty()) j["message"] = e.message;
  return j;
}

nlohmann::json run_summary_json(const ChaseState& s) {
  nlohmann::json j{{"schema", kTraceSchema},
                   {"type", "summary"},
                   {"status", to_string(s.status)},
                   {"steps", s.steps},
                   {"model_size", s.model.size()},
                   {"queue_size", s.queue.size()}};
  if (s.status == Status::Aborted) {
    j["reason"] = to_string(s.reason);
    j["message"] = s.message;
  }
  return j;
}

nlohmann::json bounds_json(const EffectBounds& b) {
  if (!b.applicable) return {{"applicable", false}, {"reason", b.reason}};
  return {{"applicable", true},
          {"N", b.N},
          {"k", b.k},
          {"model_tuples", b.model_tuples},
          {"model_documents", b.model_documents},
          {"queue_size", b.queue_size},
          {"steps", b.steps},
          {"documents", b.documents},
          {"tuples", b.tuples},
          {"saturated", b.saturated}};
}

nlohmann::json verdict_json(const Verdict& v, const Theory& th) {
  nlohmann::json j{{"schema", kVerdictSchema},
                   {"theory", th.name},
                   {"verdict", to_string(v.verdict)},
                   {"locally_simple", v.cycle.acyclic},
                   {"poly_bounded", v.poly_bounded},
                   {"N", v.N}};
  nlohmann::json cycle = nlohmann::json::array();
  for (const auto& x : v.cycle.cycle) cycle.push_back(vertex_json(x));
  j["cycle"] = v.cycle.acyclic ? nlohmann::json(nullptr) : cycle;
  nlohmann::json gen = nlohmann::json::array();
  for (const auto& l : v.doc_generating) gen.push_back(location_json(l));
  j["doc_generating_locations"] = std::move(gen);
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : v.components) {
    nlohmann::json comp = nlohmann::json::array();
    for (const auto& x : c) comp.push_back(vertex_json(x));
    comps.push_back(std::move(comp));
  }
  j["components"] = std::move(comps);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : v.graph.edges) {
    edges.push_back({{"from", vertex_json(v.graph.vertices[e.from])},
                     {"to", vertex_json(v.graph.vertices[e.to])},
                     {"source", location_json(e.source)}});
  }
  j["edges"] = std::move(edges);
  j["bounds"] = v.bounds ? bounds_json(*v.bounds) : nlohmann::json(nullptr);
  return j;
}

std::string verdict_text(const Verdict& v, const Theory& th) {
  std::string out = "theory " + th.name + ": " + to_string(v.verdict) + "\n";
  out += "  dependency graph: " + std::to_string(v.graph.vertices.size()) + " vertices, " +
         std::to_string(v.graph.edges.size()) + " edges\n";
  if (v.cycle.acyclic) {
    out += "  locally simple: yes\n";
  } else {
    out += "  locally simple: no, cycle";
    for (const auto& x : v.cycle.cycle) out += " " + to_string(x) + " ->";
    out += " " + to_string(v.cycle.cycle.front()) + "\n";
  }
  out += "  N (max instruction terms per extension): " + std::to_string(v.N) + "\n";
  out += "  non-singleton components: " + std::to_string(v.components.size()) + "\n";
  for (const auto& c : v.components) {
    out += "   ";
    for (const auto& x : c) out += " " + to_string(x);
    out += "\n";
  }
  if (v.cycle.acyclic) {
    out += "  document generating terms: " + std::to_string(v.doc_generating.size()) + "\n";
    for (const auto& l : v.doc_generating) {
      const DaemonRule& r = th.rules(l.kind)[l.rule];
      out += "    " + to_string(l) + " (on " + (l.kind == DaemonKind::SetField ? "set " : "trans ") + r.form + "." +
             r.trigger + ")\n";
    }
  }
  if (v.bounds) {
    const auto& b = *v.bounds;
    if (!b.applicable) {
      out += "  effect bounds: not applicable (" + b.reason + ")\n";
    } else {
      out += "  effect bounds: N=" + std::to_string(b.N) + " k=" + std::to_string(b.k) +
             " steps<=" + std::to_string(b.steps) + " documents<=" + std::to_string(b.documents) +
             " tuples<=" + std::to_string(b.tuples) + (b.saturated ? " (saturated)" : "") + "\n";
    }
  }
  return out;
}

}  // namespace doctheory
