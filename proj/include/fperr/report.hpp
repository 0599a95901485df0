#pragma once

#include "fperr/detector.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace fperr {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything one `detect` invocation produced for one function.
struct FunctionReport {
    std::string function;
    std::uint64_t seed = 0;
    DetectionResult result;
};

/// One full run: configuration snapshot, per-function results, timings.
/// Serializes to the JSON layout shipped in share/report.schema.json.
struct RunReport {
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    DetectionConfig detection;
    PerturbationConfig perturbation;
    OracleConfig oracle;
    std::vector<FunctionReport> functions;
    double detect_seconds = 0.0;
    double confirm_seconds = 0.0;
    double total_seconds = 0.0;
};

/// Shortest decimal string that parses back to exactly this double
/// ("inf"/"-inf"/"nan" for the non-finite values).
[[nodiscard]] std::string format_double(double v);

/// JSON value for a double: a plain number when finite, else the string
/// "inf"/"-inf"/"nan" (JSON has no non-finite numbers and metric fields are
/// routinely infinite here).
[[nodiscard]] nlohmann::ordered_json json_number(double v);

[[nodiscard]] nlohmann::ordered_json to_json(const FunctionReport& fr);
[[nodiscard]] nlohmann::ordered_json to_json(const RunReport& r);

/// Structural validation of a document against the subset of JSON Schema the
/// shipped schema file uses: "type" (single or union), "properties",
/// "required", "items", "additionalProperties": false. On failure returns
/// false and describes the first violation (with a JSON-pointer-style path)
/// in *error.
[[nodiscard]] bool validate_against_schema(const nlohmann::json& doc,
                                           const nlohmann::json& schema, std::string* error);

// CSV emitters. All floats shortest-round-trip.

/// One row per record: site,op,operand1,operand2,result (operand2 empty for
/// unary ops). Header included.
void write_trace_csv(std::ostream& out, const ExecutionTrace& trace);

/// Solve path, one row per visited point: step,x,g (multivariate: x0..xN,g).
void write_path_csv(std::ostream& out, const SolveOutcome& outcome);

/// One row per bug: function,site,op,witness,cond,perturbed_err,oracle_err,
/// significant. Witness coordinates are semicolon-joined in one field.
void write_bugs_csv(std::ostream& out, std::span<const BugRecord> bugs);

} // namespace fperr
