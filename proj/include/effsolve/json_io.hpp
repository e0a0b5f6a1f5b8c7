#pragma once

// JSON surfaces: memory snapshots, casebase files, problem instance files,
// run configs, JSONL traces and run reports.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "effsolve/config.hpp"
#include "effsolve/engine.hpp"
#include "effsolve/memory.hpp"
#include "effsolve/problem.hpp"
#include "effsolve/retrieval.hpp"

namespace effsolve::io {

using json = nlohmann::ordered_json;

// {"concepts":[{"id","label","kind","activation"}],
//  "associations":[{"from","to","weight","kind"}],"params":{...}}
json memory_to_json(const memory::MemoryGraph& graph);
memory::MemoryGraph memory_from_json(const json& j); // throws InputError

// {"cases":[{"id","surface":{name:weight},"gist":{...},"method","confidence",
//  "cost_estimate"}],"taxonomy":{"is_a":[["child","parent"],...]}}
json casebase_to_json(const retrieval::Casebase& cb);
retrieval::Casebase casebase_from_json(const json& j); // throws InputError

// {"domain":"gauss"|"csp"|"analogy","params":{...},"surface":{name:weight}}
// CSP structure (houses/attributes/constraints) lives under "params";
// constraints are {"kind":"same_house"|"adjacent"|"left_of"|"fixed","args":[...]}.
json problem_to_json(const Problem& problem);
Problem problem_from_json(const json& j); // throws InputError

// Applies the keys present in j on top of the given config (defaults <
// config file < flags precedence is assembled by the CLI).
void apply_config_json(const json& j, RunConfig& config); // throws InputError

json trace_record_to_json(const engine::TraceRecord& rec);
std::string trace_to_jsonl(const std::vector<engine::TraceRecord>& trace);

json run_report(const engine::RunResult& result, double wall_seconds,
                const std::string& trace_path);

json load_json_file(const std::string& path);               // throws InputError
void write_text_file(const std::string& path, const std::string& text);

} // namespace effsolve::io
