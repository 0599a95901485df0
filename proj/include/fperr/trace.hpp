#pragma once

#include "fperr/op.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fperr {

/// Identifies one static operation site inside a corpus function. Site
/// indices are assigned in definition order (which, for the straight-line
/// corpus bodies, is also execution order), so they are stable across runs
/// and across inputs.
struct SiteId {
    std::string function_id;
    std::int32_t op_index = -1;

    friend bool operator==(const SiteId&, const SiteId&) = default;
};

/// One recorded atomic operation: where it happened, what it was, and the
/// exact doubles that went in and came out. `operand_sites` carries dataflow
/// provenance (the site index that produced each operand, or -1 for function
/// inputs and literal constants); residual construction uses it to reroute
/// division-by-zero dangers onto the denominator's producing site.
struct TraceRecord {
    SiteId site;
    OpKind op = OpKind::Add;
    std::array<double, 2> operands{0.0, 0.0};   // operands[1] unused for unary ops
    double result = 0.0;
    std::array<std::int32_t, 2> operand_sites{-1, -1};

    [[nodiscard]] int operand_count() const noexcept { return is_binary(op) ? 2 : 1; }
};

/// Everything one evaluation did, in execution order.
struct ExecutionTrace {
    std::vector<TraceRecord> records;
    double final_result = 0.0;
};

/// Thrown when an atomic operation receives a FINITE argument outside its
/// mathematical domain (log of a non-positive value, sqrt of a negative,
/// asin/acos beyond [-1,1]). Division and pow never throw — they follow IEEE
/// (0/0 = NaN, x/0 = signed Inf) — and non-finite arguments always propagate
/// silently. Carries the partial trace recorded up to the failing operation.
class DomainError : public std::runtime_error {
public:
    DomainError(OpKind op, std::int32_t op_index, std::vector<TraceRecord> partial)
        : std::runtime_error(std::string("domain error in ") + to_string(op) +
                             " at site " + std::to_string(op_index)),
          op_(op), op_index_(op_index), partial_(std::move(partial)) {}

    [[nodiscard]] OpKind op() const noexcept { return op_; }
    [[nodiscard]] std::int32_t op_index() const noexcept { return op_index_; }
    [[nodiscard]] const std::vector<TraceRecord>& partial_trace() const noexcept { return partial_; }

private:
    OpKind op_;
    std::int32_t op_index_;
    std::vector<TraceRecord> partial_;
};

/// A double flowing through a shadow evaluation, tagged with the site that
/// produced it (-1 for inputs and constants).
struct DVal {
    double v = 0.0;
    std::int32_t site = -1;
};

/// Shadow-execution context for all double-precision evaluation modes.
///
/// Plain           — just compute.
/// Trace           — record every operation.
/// Capture         — remember the result of one site.
/// PerturbResult   — multiply one site's RESULT by (1 + delta).
/// PerturbOperand  — multiply one operand slot by (1 + delta) at entry to one
///                   site (slot 1 on a unary op is a no-op). Other uses of the
///                   same value are untouched.
///
/// Each context owns its own buffers; concurrent evaluations need separate
/// contexts.
class DoubleCtx {
public:
    enum class Mode { Plain, Trace, Capture, PerturbResult, PerturbOperand };

    DoubleCtx() = default;
    explicit DoubleCtx(Mode m) : mode(m) {}
    DoubleCtx(Mode m, std::int32_t site, double d = 0.0, int s = 0)
        : mode(m), target_site(site), delta(d), slot(s) {}

    using value_type = DVal;

    Mode mode = Mode::Plain;
    std::int32_t target_site = -1;
    double delta = 0.0;
    int slot = 0;

    std::vector<TraceRecord> records;   // Trace mode
    std::optional<double> captured;     // Capture mode
    bool site_hit = false;              // Capture / Perturb*: target_site executed

    /// Wrap a raw function input (no provenance).
    [[nodiscard]] DVal input(double x) const noexcept { return {x, -1}; }

    /// Literal constant, parsed from its decimal spelling. Every evaluation
    /// mode parses the same string, which is what keeps the double and
    /// high-precision versions provably the same expression.
    [[nodiscard]] DVal constant(const char* decimal) const;

    /// Execute one atomic operation: assign the next site index, check the
    /// domain, apply any perturbation, compute, record.
    DVal op(OpKind k, DVal a);
    DVal op(OpKind k, DVal a, DVal b);

    void set_function(std::string id) { function_id_ = std::move(id); }
    [[nodiscard]] const std::string& function_id() const noexcept { return function_id_; }

private:
    std::int32_t next_site_ = 0;
    std::string function_id_;

    DVal run(OpKind k, DVal a, const DVal* b);
};

/// Raw IEEE evaluation of one op (round-to-nearest double). No domain checks:
/// log(-1) is NaN here, 1/0 is Inf. The context layers domain checking on top.
[[nodiscard]] double raw_apply(OpKind k, double a, double b = 0.0) noexcept;

/// True if `a` (and `b` for binary ops) is a finite argument outside the
/// mathematical domain of `k`. Non-finite arguments never count.
[[nodiscard]] bool violates_domain(OpKind k, double a, double b = 0.0) noexcept;

} // namespace fperr
