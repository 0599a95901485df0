#pragma once

#include "fperr/trace.hpp"

#include <stdexcept>
#include <vector>

namespace fperr {

class InvalidRecord : public std::runtime_error {
public:
    explicit InvalidRecord(const char* what) : std::runtime_error(what) {}
};

/// How an operation's condition number can explode: its result approaching a
/// fixed singular value, or diverging to infinity.
struct DangerSpec {
    enum class Kind { FixedValue, Infinity };
    Kind kind = Kind::FixedValue;
    double value = 0.0;   // FixedValue target; unused for Infinity

    friend bool operator==(const DangerSpec&, const DangerSpec&) = default;
};

struct CatalogConfig {
    /// Overflow-type dangers (exp/sinh/cosh result -> Inf) drive Newton
    /// toward range errors rather than rounding-error amplification, so they
    /// are off by default.
    bool include_overflow_dangers = false;
};

/// Condition number of one recorded operation.
///
/// Unary f:   Gamma = |x * f'(x) / f(x)|, evaluated against the RECORDED
///            result (so a rounded-to-zero result reads as +Inf, matching
///            what the computation actually experienced).
/// add/sub:   Gamma = max(|a|,|b|) / |result| — the max of the operand-wise
///            conditions |a/(a±b)|, |b/(a±b)|. Zero result with nonzero
///            numerator is +Inf; 0/0 is 0 (nothing was amplified).
/// mul/div:   Gamma = 1 (relative error passes through unamplified).
/// pow(a,b):  max(|b|, |b*log(a)|) — operand-wise sensitivities.
///
/// Throws InvalidRecord on non-finite operands.
[[nodiscard]] double condition_number(const TraceRecord& rec);

/// Danger catalog for one op. FixedValue(0) for {add, sub, sin, cos, tan,
/// log}; tan additionally Infinity; everything else is benign by default.
/// Division's denominator->0 danger is handled at residual-construction time
/// by rerouting to the denominator's producing site, so div itself has no
/// entry here.
[[nodiscard]] std::vector<DangerSpec> danger_specs(OpKind op, const CatalogConfig& cfg = {});

/// All sites of the trace whose condition number exceeds `threshold`, in
/// trace order. Records with non-finite operands are skipped and counted in
/// `skipped_nonfinite` if provided.
[[nodiscard]] std::vector<std::pair<SiteId, double>> flag_dangerous_sites(
    const ExecutionTrace& trace, double threshold, int* skipped_nonfinite = nullptr);

/// Human-readable formula text for the CLI catalog listing.
[[nodiscard]] const char* condition_formula_text(OpKind op);

} // namespace fperr
