#include "fperr/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace fperr {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

namespace {

ordered_json witness_json(const std::vector<double>& w) {
    ordered_json a = ordered_json::array();
    for (double v : w) a.push_back(json_number(v));
    return a;
}

ordered_json stats_json(const DetectionStats& s) {
    return ordered_json{{"seeds", s.seeds},
                        {"distinct_targets", s.distinct_targets},
                        {"solves", s.solves},
                        {"converged", s.converged},
                        {"stopped_flat_derivative", s.stopped_flat_derivative},
                        {"stopped_small_step", s.stopped_small_step},
                        {"max_iterations", s.max_iterations},
                        {"diverged", s.diverged},
                        {"wall_ms", json_number(s.wall_ms)}};
}

} // namespace

ordered_json to_json(const FunctionReport& fr) {
    ordered_json candidates = ordered_json::array();
    for (const CandidateInput& c : fr.result.candidates) {
        candidates.push_back({{"site", c.target.site.op_index},
                              {"op", to_string(c.target.op)},
                              {"witness", witness_json(c.witness)},
                              {"residual", json_number(c.residual_at_witness)},
                              {"iterations", c.solve.iterations}});
    }
    ordered_json bugs = ordered_json::array();
    for (const BugRecord& b : fr.result.bugs) {
        bugs.push_back({{"site", b.site.op_index},
                        {"op", to_string(b.op)},
                        {"witness", witness_json(b.witness)},
                        {"oracle_rel_error", json_number(b.oracle_rel_error)},
                        {"condition_number", json_number(b.condition_number)}});
    }
    return ordered_json{{"function", fr.function},
                        {"seed", fr.seed},
                        {"candidates", std::move(candidates)},
                        {"bugs", std::move(bugs)},
                        {"stats", stats_json(fr.result.stats)}};
}

ordered_json to_json(const RunReport& r) {
    ordered_json config{{"seed", r.seed},
                        {"max_iter", r.detection.solver.max_iter},
                        {"tol_f", json_number(r.detection.solver.tol_f)},
                        {"tol_df", json_number(r.detection.solver.tol_df)},
                        {"tol_step", json_number(r.detection.solver.tol_step)},
                        {"fd_scale", json_number(r.detection.solver.fd_scale)},
                        {"delta", json_number(r.perturbation.delta)},
                        {"cond_threshold", json_number(r.perturbation.cond_threshold)},
                        {"bug_threshold", json_number(r.perturbation.bug_threshold)},
                        {"precision_bits", static_cast<std::int64_t>(r.oracle.precision_bits)},
                        {"multi_input_seeds_per_dim", r.detection.multi_input_seeds_per_dim}};
    ordered_json results = ordered_json::array();
    for (const FunctionReport& fr : r.functions) results.push_back(to_json(fr));
    return ordered_json{{"tool_version", r.tool_version},
                        {"config", std::move(config)},
                        {"results", std::move(results)},
                        {"wall_times", ordered_json{{"detect_s", json_number(r.detect_seconds)},
                                                    {"confirm_s", json_number(r.confirm_seconds)},
                                                    {"total_s", json_number(r.total_seconds)}}}};
}

namespace {

bool type_matches(const json& doc, const std::string& type) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "boolean") return doc.is_boolean();
    if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (type == "number") return doc.is_number();
    if (type == "null") return doc.is_null();
    return false;
}

bool validate_node(const json& doc, const json& schema, const std::string& path,
                   std::string* error) {
    auto fail = [&](const std::string& why) {
        if (error) *error = path.empty() ? why : path + ": " + why;
        return false;
    };
    if (const auto it = schema.find("type"); it != schema.end()) {
        bool ok = false;
        if (it->is_array()) {
            for (const auto& t : *it) ok = ok || type_matches(doc, t.get<std::string>());
        } else {
            ok = type_matches(doc, it->get<std::string>());
        }
        if (!ok) return fail("expected type " + it->dump() + ", got " + std::string(doc.type_name()));
    }
    if (const auto req = schema.find("required"); req != schema.end()) {
        for (const auto& key : *req) {
            if (!doc.contains(key.get<std::string>())) {
                return fail("missing required key \"" + key.get<std::string>() + "\"");
            }
        }
    }
    if (const auto props = schema.find("properties"); props != schema.end() && doc.is_object()) {
        for (const auto& [key, sub] : props->items()) {
            if (const auto it = doc.find(key); it != doc.end()) {
                if (!validate_node(*it, sub, path + "/" + key, error)) return false;
            }
        }
        if (schema.value("additionalProperties", json(true)) == json(false)) {
            for (const auto& [key, value] : doc.items()) {
                (void)value;
                if (!props->contains(key)) return fail("unexpected key \"" + key + "\"");
            }
        }
    }
    if (const auto items = schema.find("items"); items != schema.end() && doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            if (!validate_node(doc[i], *items, path + "/" + std::to_string(i), error)) return false;
        }
    }
    return true;
}

} // namespace

bool validate_against_schema(const json& doc, const json& schema, std::string* error) {
    return validate_node(doc, schema, "", error);
}

void write_trace_csv(std::ostream& out, const ExecutionTrace& trace) {
    out << "site,op,operand1,operand2,result\n";
    for (const TraceRecord& r : trace.records) {
        out << r.site.op_index << ',' << to_string(r.op) << ',' << format_double(r.operands[0])
            << ',';
        if (r.operand_count() == 2) out << format_double(r.operands[1]);
        out << ',' << format_double(r.result) << '\n';
    }
}

void write_path_csv(std::ostream& out, const SolveOutcome& outcome) {
    const std::size_t n = outcome.path.empty() ? 1 : outcome.path.front().first.size();
    out << "step,";
    if (n == 1) {
        out << "x,";
    } else {
        for (std::size_t i = 0; i < n; ++i) out << 'x' << i << ',';
    }
    out << "g\n";
    for (std::size_t k = 0; k < outcome.path.size(); ++k) {
        out << k;
        for (double x : outcome.path[k].first) out << ',' << format_double(x);
        out << ',' << format_double(outcome.path[k].second) << '\n';
    }
}

void write_bugs_csv(std::ostream& out, std::span<const BugRecord> bugs) {
    out << "function,site,op,witness,cond,perturbed_err,oracle_err,significant\n";
    for (const BugRecord& b : bugs) {
        out << b.function_id << ',' << b.site.op_index << ',' << to_string(b.op) << ',';
        for (std::size_t i = 0; i < b.witness.size(); ++i) {
            if (i) out << ';';
            out << format_double(b.witness[i]);
        }
        out << ',' << format_double(b.condition_number) << ','
            << format_double(b.perturbed_rel_error) << ',' << format_double(b.oracle_rel_error)
            << ',' << (is_significant(b.oracle_rel_error) ? "true" : "false") << '\n';
    }
}

} // namespace fperr
