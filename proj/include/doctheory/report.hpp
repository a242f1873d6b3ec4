#pragma once

#include <json.hpp>
#include <string>

#include "doctheory/analysis.hpp"
#include "doctheory/chase.hpp"
#include "doctheory/theory.hpp"

// Machine-readable records. Every record carries a "schema" member:
//   doctheory.trace/1    one record per line: a header, one per event, a summary
//   doctheory.verdict/1  a single object

namespace doctheory {

inline constexpr const char* kTraceSchema = "doctheory.trace/1";
inline constexpr const char* kVerdictSchema = "doctheory.verdict/1";

nlohmann::json trace_header_json(const Theory& th, const ChaseState& start);
nlohmann::json trace_event_json(const TraceEvent& e, const Theory& th);
nlohmann::json run_summary_json(const ChaseState& s);

nlohmann::json bounds_json(const EffectBounds& b);
nlohmann::json verdict_json(const Verdict& v, const Theory& th);

/// Human-readable verdict report.
std::string verdict_text(const Verdict& v, const Theory& th);

}  // namespace doctheory
