#include "fperr/targets.hpp"

#include <algorithm>
#include <cmath>

namespace fperr {

std::vector<ResidualTarget> enumerate_targets(const CorpusFunction& f,
                                              std::span<const double> probe,
                                              const CatalogConfig& cfg) {
    std::vector<TraceRecord> records;
    try {
        records = evaluate_traced(f, probe).records;
    } catch (const DomainError& e) {
        records = e.partial_trace();
    }

    std::vector<ResidualTarget> targets;
    auto already_emitted = [&](std::int32_t op_index, const DangerSpec& spec) {
        return std::any_of(targets.begin(), targets.end(), [&](const ResidualTarget& t) {
            return t.site.op_index == op_index && t.spec == spec;
        });
    };

    for (const auto& rec : records) {
        for (const auto& spec : danger_specs(rec.op, cfg)) {
            if (!already_emitted(rec.site.op_index, spec)) {
                targets.push_back({f.id, rec.site, rec.op, spec});
            }
        }
        // Division by a vanishing denominator explodes, but div's own
        // condition number is 1 — the danger belongs to whichever site
        // produced the denominator, so the residual targets that site's
        // result -> 0 instead.
        if (rec.op == OpKind::Div) {
            const std::int32_t producer = rec.operand_sites[1];
            auto it = std::find_if(records.begin(), records.end(), [&](const TraceRecord& r) {
                return r.site.op_index == producer;
            });
            if (producer >= 0 && it != records.end()) {
                const DangerSpec zero{DangerSpec::Kind::FixedValue, 0.0};
                if (!already_emitted(producer, zero)) {
                    targets.push_back({f.id, it->site, it->op, zero});
                }
            }
        }
    }
    return targets;
}

ResidualEvaluation residual(const CorpusFunction& f, const ResidualTarget& t,
                            std::span<const double> inputs) {
    DoubleCtx ctx(DoubleCtx::Mode::Capture, t.site.op_index);
    try {
        (void)evaluate_with(f, ctx, inputs);
    } catch (const DomainError&) {
        // The site may still have executed before the failing op; fall
        // through and use whatever was captured.
    }
    if (!ctx.captured.has_value()) {
        return {};   // NaN, site_executed = false
    }
    const double r = *ctx.captured;
    double g;
    if (t.spec.kind == DangerSpec::Kind::FixedValue) {
        g = r - t.spec.value;
    } else {
        g = r == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / r;
    }
    return {g, true};
}

ResidualEvaluation residual(const ResidualTarget& t, std::span<const double> inputs) {
    return residual(lookup(t.function_id).function, t, inputs);
}

} // namespace fperr
