#pragma once

#include "fperr/bigfloat.hpp"
#include "fperr/trace.hpp"

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fperr {

/// Per-input closed interval; an evaluation outside it is the caller's
/// responsibility (the detector clips its seed cells to the box, but Newton
/// iterates roam freely and rely on NaN/DomainError signaling instead).
/// The default box is the whole double line: its nominal edge 1.8e308 lies
/// beyond DBL_MAX, so as a double it is +Inf, and samplers clamp to the
/// largest finite values.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

/// A benchmark routine defined once over a generic numeric interface and
/// instantiated for plain/traced/perturbed doubles and for the
/// arbitrary-precision oracle. Both evaluators come from the same template,
/// so they are the same expression by construction.
struct CorpusFunction {
    std::string id;
    std::string expression;            // human-readable definition
    int arity = 1;
    std::vector<Interval> domain;      // one box per input
    std::vector<OpKind> site_ops;      // static site table, definition order

    std::function<DVal(DoubleCtx&, std::span<const DVal>)> eval_d;
    std::function<BigFloat(const BigCtx&, std::span<const BigFloat>)> eval_b;
};

/// An input region where the double evaluation is known (by prior
/// brute-force oracle scanning) to err, with the error scale the scan found.
struct WitnessRegion {
    int input_index = 0;               // which input the interval constrains
    Interval region;
    double expected_error_scale = 1e-3;
    std::string note;
};

struct KnownBugSite {
    std::int32_t op_index = -1;
    std::string description;
};

struct CorpusEntry {
    CorpusFunction function;
    std::vector<KnownBugSite> known_bug_sites;
    std::vector<WitnessRegion> known_witness_regions;
};

class UnknownFunction : public std::runtime_error {
public:
    explicit UnknownFunction(const std::string& id)
        : std::runtime_error("unknown corpus function: " + id) {}
};

/// The canonical registry (f1..f8). Immutable after first call.
[[nodiscard]] const std::vector<CorpusEntry>& registry();

/// Look up one entry by id; throws UnknownFunction.
[[nodiscard]] const CorpusEntry& lookup(const std::string& id);

// ---------------------------------------------------------------------------
// Evaluation entry points (numeric-trace module)
// ---------------------------------------------------------------------------

/// Plain double evaluation. Throws DomainError on finite out-of-domain
/// arguments; NaN/Inf results are returned, not errors.
[[nodiscard]] double evaluate_plain(const CorpusFunction& f, std::span<const double> inputs);

/// Traced evaluation: the result is bit-identical to evaluate_plain, plus one
/// TraceRecord per executed operation in execution order. On DomainError the
/// partial trace is in the exception payload.
[[nodiscard]] ExecutionTrace evaluate_traced(const CorpusFunction& f, std::span<const double> inputs);

/// All static operation sites of f in definition order.
[[nodiscard]] std::vector<std::pair<SiteId, OpKind>> site_table(const CorpusFunction& f);

/// Run f's evaluator with an arbitrary pre-configured double context
/// (capture / perturbation modes). Returns the final value.
[[nodiscard]] double evaluate_with(const CorpusFunction& f, DoubleCtx& ctx,
                                   std::span<const double> inputs);

/// High-precision evaluation at the context's precision.
[[nodiscard]] BigFloat evaluate_big(const CorpusFunction& f, const BigCtx& ctx,
                                    std::span<const double> inputs);

} // namespace fperr
