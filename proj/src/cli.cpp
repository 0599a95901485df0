#include "fperr/cli.hpp"

#include "fperr/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fperr {

namespace {

std::string danger_text(const DangerSpec& spec) {
    if (spec.kind == DangerSpec::Kind::Infinity) return "result->inf";
    return "result->" + format_double(spec.value);
}

std::string join_doubles(std::span<const double> vs, const char* sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += sep;
        s += format_double(vs[i]);
    }
    return s;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FPERR_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("error writing " + path);
}

int cmd_list() {
    std::cout << "id  arity  domain                expression\n";
    for (const CorpusEntry& e : registry()) {
        std::string domain;
        for (std::size_t i = 0; i < e.function.domain.size(); ++i) {
            if (i) domain += " x ";
            domain += "[" + format_double(e.function.domain[i].lo) + ", " +
                      format_double(e.function.domain[i].hi) + "]";
        }
        std::cout << e.function.id << "  " << e.function.arity << "      " << domain << "  "
                  << e.function.expression << '\n';
        for (const KnownBugSite& k : e.known_bug_sites) {
            std::cout << "    known bug site " << k.op_index << ": " << k.description << '\n';
        }
    }
    return 0;
}

int cmd_catalog() {
    std::cout << "op     dangers                                         condition number\n";
    for (OpKind k : {OpKind::Add, OpKind::Sub, OpKind::Mul, OpKind::Div, OpKind::Sin, OpKind::Cos,
                     OpKind::Tan, OpKind::Asin, OpKind::Acos, OpKind::Atan, OpKind::Exp,
                     OpKind::Log, OpKind::Sqrt, OpKind::Sinh, OpKind::Cosh, OpKind::Tanh,
                     OpKind::Pow}) {
        std::string dangers;
        for (const DangerSpec& spec : danger_specs(k)) {
            if (!dangers.empty()) dangers += ", ";
            dangers += danger_text(spec);
        }
        if (k == OpKind::Div) dangers = "denominator->0 (rerouted to its producing site)";
        if (dangers.empty()) dangers = "-";
        std::cout << to_string(k);
        for (std::size_t i = std::string(to_string(k)).size(); i < 7; ++i) std::cout << ' ';
        std::cout << dangers << "  ";
        for (std::size_t i = dangers.size(); i < 46; ++i) std::cout << ' ';
        std::cout << condition_formula_text(k) << '\n';
    }
    return 0;
}

int cmd_trace(const std::string& fn, const std::vector<double>& inputs,
              const std::string& csv_path) {
    const CorpusEntry& entry = lookup(fn);
    ExecutionTrace trace;
    bool failed = false;
    try {
        trace = evaluate_traced(entry.function, inputs);
    } catch (const DomainError& e) {
        trace.records = e.partial_trace();
        trace.final_result = std::numeric_limits<double>::quiet_NaN();
        failed = true;
        std::cout << "domain error: " << e.what() << " (partial trace below)\n";
    }
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    if (csv_path.empty()) {
        std::cout << csv.str();
    } else {
        write_file(csv_path, csv.str());
        std::cout << "trace written to " << csv_path << '\n';
    }
    if (!failed) std::cout << "result: " << format_double(trace.final_result) << '\n';
    return 0;
}

int cmd_targets(const std::string& fn, const std::vector<double>& probe) {
    const CorpusEntry& entry = lookup(fn);
    const std::vector<ResidualTarget> targets = enumerate_targets(entry.function, probe);
    std::cout << "site  op    danger\n";
    for (const ResidualTarget& t : targets) {
        std::cout << t.site.op_index << "     " << to_string(t.op) << "   " << danger_text(t.spec)
                  << '\n';
    }
    std::cout << targets.size() << " target(s) at probe (" << join_doubles(probe) << ")\n";
    return 0;
}

int cmd_solve(const std::string& fn, int site, const std::vector<double>& from, bool infinity,
              const SolverConfig& solver, const std::string& csv_path) {
    const CorpusEntry& entry = lookup(fn);
    const auto table = site_table(entry.function);
    if (site < 0 || site >= static_cast<int>(table.size())) {
        std::cerr << fn << " has sites 0.." << table.size() - 1 << ", not " << site << '\n';
        return 1;
    }
    if (static_cast<int>(from.size()) != entry.function.arity) {
        std::cerr << fn << " takes " << entry.function.arity << " input(s), got " << from.size()
                  << '\n';
        return 1;
    }
    ResidualTarget t;
    t.function_id = fn;
    t.site = table[site].first;
    t.op = table[site].second;
    t.spec = infinity ? DangerSpec{DangerSpec::Kind::Infinity, 0.0}
                      : DangerSpec{DangerSpec::Kind::FixedValue, 0.0};

    SolveOutcome outcome;
    if (entry.function.arity == 1) {
        outcome = newton_solve(
            [&](double x) { return residual(t, std::span<const double>(&x, 1)).value; }, from[0],
            solver);
    } else {
        outcome = newton_solve_multi(
            [&](std::span<const double> xs) { return residual(t, xs).value; }, from, solver);
    }

    std::cout << "target: site " << site << " (" << to_string(t.op) << "), "
              << danger_text(t.spec) << '\n';
    for (std::size_t k = 0; k < outcome.path.size(); ++k) {
        std::cout << "  step " << k << ": x = (" << join_doubles(outcome.path[k].first)
                  << "), g = " << format_double(outcome.path[k].second) << '\n';
    }
    std::cout << to_string(outcome.status) << " after " << outcome.iterations
              << " iteration(s), root = (" << join_doubles(outcome.root) << ")\n";
    if (!csv_path.empty()) {
        std::ostringstream csv;
        write_path_csv(csv, outcome);
        write_file(csv_path, csv.str());
        std::cout << "path written to " << csv_path << '\n';
    }
    return 0;
}

int cmd_validate(const std::string& fn, const std::vector<double>& inputs,
                 const OracleConfig& ocfg) {
    const CorpusEntry& entry = lookup(fn);
    std::cout << "function:       " << fn << " = " << entry.function.expression << '\n';
    std::cout << "input:          (" << join_doubles(inputs) << ")\n";
    try {
        const double fl = evaluate_plain(entry.function, inputs);
        const BigCtx big(ocfg.precision_bits);
        const BigFloat hp = evaluate_big(entry.function, big, inputs);
        const double err = oracle_relative_error(entry.function, inputs, ocfg);
        std::cout << "double result:  " << format_double(fl) << '\n';
        std::cout << "oracle result:  " << hp.to_decimal(40) << "  (" << ocfg.precision_bits
                  << "-bit)\n";
        std::cout << "relative error: " << format_double(err) << '\n';
        std::cout << "significant:    " << (is_significant(err) ? "yes (> 0.001)" : "no") << '\n';
    } catch (const DomainError& e) {
        std::cout << "double result:  domain error (" << e.what() << ")\n";
    } catch (const OracleDomainError& e) {
        std::cout << "oracle result:  domain error (" << e.what() << ")\n";
    }
    return 0;
}

int cmd_detect(const std::string& fn, std::uint64_t seed, const DetectionConfig& dcfg,
               const PerturbationConfig& pcfg, const OracleConfig& ocfg,
               const std::string& json_path, const std::string& csv_path, bool fail_on_bugs) {
    std::vector<const CorpusEntry*> entries;
    if (fn == "all") {
        for (const CorpusEntry& e : registry()) entries.push_back(&e);
    } else {
        entries.push_back(&lookup(fn));
    }

    RunReport report;
    report.seed = seed;
    report.detection = dcfg;
    report.perturbation = pcfg;
    report.oracle = ocfg;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<BugRecord> all_bugs;
    for (const CorpusEntry* e : entries) {
        FunctionReport fr;
        fr.function = e->function.id;
        fr.seed = seed;
        fr.result = run_detection(e->function, dcfg, pcfg, ocfg);
        report.detect_seconds += fr.result.stats.wall_ms / 1000.0;
        all_bugs.insert(all_bugs.end(), fr.result.bugs.begin(), fr.result.bugs.end());
        std::cout << fr.function << ": " << fr.result.candidates.size() << " candidate(s), "
                  << fr.result.bugs.size() << " confirmed bug site(s)";
        if (!fr.result.bugs.empty()) {
            std::cout << " [";
            for (std::size_t i = 0; i < fr.result.bugs.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << fr.result.bugs[i].site.op_index << ":"
                          << to_string(fr.result.bugs[i].op);
            }
            std::cout << "]";
        }
        std::cout << '\n';
        report.functions.push_back(std::move(fr));
    }
    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.confirm_seconds = report.total_seconds - report.detect_seconds;

    for (const BugRecord& b : all_bugs) {
        std::cout << "  " << b.function_id << " site " << b.site.op_index << " ("
                  << to_string(b.op) << ") witness (" << join_doubles(b.witness)
                  << ") cond " << format_double(b.condition_number) << " response "
                  << format_double(b.perturbed_rel_error) << " oracle "
                  << format_double(b.oracle_rel_error)
                  << (is_significant(b.oracle_rel_error) ? " significant" : "") << '\n';
    }

    if (!json_path.empty()) {
        write_file(json_path, to_json(report).dump(2) + "\n");
        std::cout << "report written to " << json_path << '\n';
    }
    if (!csv_path.empty()) {
        std::ostringstream csv;
        write_bugs_csv(csv, all_bugs);
        write_file(csv_path, csv.str());
        std::cout << "bug rows written to " << csv_path << '\n';
    }
    if (fail_on_bugs && !all_bugs.empty()) return 2;
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"fperr: floating-point error-inducing input detector"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    SolverConfig solver;
    PerturbationConfig pcfg;
    OracleConfig ocfg;
    std::string function, json_path, csv_path;
    std::vector<double> inputs;
    int site = 0;
    bool infinity = false, fail_on_bugs = false;

    app.add_subcommand("list", "list the corpus functions");
    app.add_subcommand("catalog", "show the per-op danger and condition-number catalog");

    CLI::App* trace = app.add_subcommand("trace", "record every atomic operation at an input");
    trace->add_option("function", function)->required();
    trace->add_option("--input", inputs, "input value(s)")->required()->expected(-1);
    trace->add_option("--csv", csv_path, "write the trace as CSV to this file");

    CLI::App* targets = app.add_subcommand("targets", "enumerate residual targets at a probe");
    targets->add_option("function", function)->required();
    targets->add_option("--probe", inputs, "probe input value(s)")->required()->expected(-1);

    CLI::App* solve = app.add_subcommand("solve", "Newton-solve one site's residual");
    solve->add_option("function", function)->required();
    solve->add_option("--site", site, "operation site index")->required();
    solve->add_option("--from", inputs, "initial point")->required()->expected(-1);
    solve->add_flag("--infinity", infinity, "target result->inf instead of result->0");
    solve->add_option("--max-iter", solver.max_iter, "iteration cap");
    solve->add_option("--csv", csv_path, "write the path as CSV to this file");

    CLI::App* validate = app.add_subcommand("validate", "compare against the oracle at an input");
    validate->add_option("function", function)->required();
    validate->add_option("--input", inputs, "input value(s)")->required()->expected(-1);
    validate->add_option("--precision-bits", ocfg.precision_bits, "oracle precision");

    CLI::App* detect = app.add_subcommand("detect", "run the full detection pipeline");
    detect->add_option("function", function, "corpus function id, or 'all'")->required();
    detect->add_option("--seed", seed, "RNG seed (default: FPERR_SEED or 0)");
    detect->add_option("--json", json_path, "write the full report as JSON to this file");
    detect->add_option("--csv", csv_path, "write one CSV row per bug to this file");
    detect->add_option("--precision-bits", ocfg.precision_bits, "oracle precision");
    detect->add_option("--cond-threshold", pcfg.cond_threshold, "dangerous-site threshold");
    detect->add_option("--delta", pcfg.delta, "perturbation magnitude");
    detect->add_option("--max-iter", solver.max_iter, "Newton iteration cap");
    detect->add_flag("--fail-on-bugs", fail_on_bugs, "exit 2 when bugs are confirmed");

    try {
        // CLI11's vector overload consumes arguments back-to-front.
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }

    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand("catalog")) return cmd_catalog();
        if (app.got_subcommand(trace)) return cmd_trace(function, inputs, csv_path);
        if (app.got_subcommand(targets)) return cmd_targets(function, inputs);
        if (app.got_subcommand(solve)) {
            return cmd_solve(function, site, inputs, infinity, solver, csv_path);
        }
        if (app.got_subcommand(validate)) return cmd_validate(function, inputs, ocfg);
        if (app.got_subcommand(detect)) {
            DetectionConfig dcfg;
            dcfg.rng_seed = seed;
            dcfg.solver = solver;
            dcfg.cond_threshold = pcfg.cond_threshold;
            return cmd_detect(function, seed, dcfg, pcfg, ocfg, json_path, csv_path,
                              fail_on_bugs);
        }
    } catch (const UnknownFunction& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace fperr
