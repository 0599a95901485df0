#include "fperr/filter.hpp"

#include "fperr/condition.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace fperr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One evaluation outcome: either a double (possibly NaN/Inf) or a domain
/// failure. Failures are values here, not exceptions, because the response
/// classifier has to compare them.
struct Outcome {
    bool failed = false;
    double value = kNaN;
};

Outcome run_outcome(const CorpusFunction& f, std::span<const double> inputs, DoubleCtx& ctx) {
    try {
        return {false, evaluate_with(f, ctx, inputs)};
    } catch (const DomainError&) {
        return {true, kNaN};
    }
}

/// Compare plain and perturbed outputs. Finite pair → relative change
/// (absolute at plain = 0); otherwise 0 for indistinguishable outcomes and
/// +Inf for any qualitative change.
double response_between(const Outcome& plain, const Outcome& pert) {
    if (plain.failed || pert.failed) {
        return (plain.failed && pert.failed) ? 0.0 : kInf;
    }
    const double p = plain.value, q = pert.value;
    if (std::isfinite(p) && std::isfinite(q)) {
        return p != 0.0 ? std::fabs((q - p) / p) : std::fabs(q - p);
    }
    if ((std::isnan(p) && std::isnan(q)) || p == q) {
        return 0.0;
    }
    return kInf;
}

} // namespace

double evaluate_perturbed(const CorpusFunction& f, std::span<const double> inputs,
                          const SiteId& site, double delta) {
    DoubleCtx ctx(DoubleCtx::Mode::PerturbResult, site.op_index, delta);
    try {
        const double r = evaluate_with(f, ctx, inputs);
        if (!ctx.site_hit) throw SiteNotExecuted(f.id, site.op_index);
        return r;
    } catch (const DomainError&) {
        if (!ctx.site_hit) throw SiteNotExecuted(f.id, site.op_index);
        throw;   // the site ran; a failure downstream of it is not ours to hide
    }
}

double perturbed_relative_error(const CorpusFunction& f, std::span<const double> inputs,
                                const SiteId& site, const PerturbationConfig& cfg) {
    DoubleCtx plain_ctx(DoubleCtx::Mode::Plain);
    const Outcome plain = run_outcome(f, inputs, plain_ctx);

    double worst = 0.0;
    bool hit = false;
    for (int slot = 0; slot < 2; ++slot) {
        DoubleCtx ctx(DoubleCtx::Mode::PerturbOperand, site.op_index, cfg.delta, slot);
        const Outcome pert = run_outcome(f, inputs, ctx);
        hit = hit || ctx.site_hit;
        worst = std::max(worst, response_between(plain, pert));
    }
    if (!hit) throw SiteNotExecuted(f.id, site.op_index);
    return worst;
}

double oracle_relative_error(const CorpusFunction& f, std::span<const double> inputs,
                             const OracleConfig& cfg) {
    if (cfg.precision_bits < 128) {
        throw std::invalid_argument("oracle precision_bits must be at least 128");
    }
    const BigCtx big(cfg.precision_bits);
    const BigFloat hp = evaluate_big(f, big, inputs);   // may throw OracleDomainError
    const double fl = evaluate_plain(f, inputs);

    if (std::isnan(fl)) return kInf;
    if (std::isinf(fl)) {
        const bool overflow_same_sign =
            (fl > 0.0 && hp.cmp(DBL_MAX) > 0) || (fl < 0.0 && hp.cmp(-DBL_MAX) < 0);
        return overflow_same_sign ? 0.0 : kInf;
    }
    if (hp.is_nan()) return kInf;
    if (hp.is_zero()) return std::fabs(fl);
    const BigFloat fl_big(fl, cfg.precision_bits);
    return fl_big.sub(hp).div(hp).abs().to_double();
}

BugRecord confirm_candidate(const CorpusFunction& f, const CandidateInput& cand,
                            const PerturbationConfig& pcfg, const OracleConfig& ocfg) {
    BugRecord rec;
    rec.function_id = f.id;
    rec.site = cand.target.site;
    rec.op = cand.target.op;
    rec.witness = cand.witness;

    std::vector<TraceRecord> records;
    try {
        records = evaluate_traced(f, rec.witness).records;
    } catch (const DomainError& e) {
        records = e.partial_trace();
    }
    const auto it = std::find_if(records.begin(), records.end(), [&](const TraceRecord& r) {
        return r.site.op_index == rec.site.op_index;
    });
    if (it == records.end()) return rec;   // site never executed: unconfirmed, NaN metrics

    try {
        rec.condition_number = condition_number(*it);
    } catch (const InvalidRecord&) {
        return rec;   // non-finite operands: nothing meaningful to measure
    }
    try {
        rec.perturbed_rel_error = perturbed_relative_error(f, rec.witness, rec.site, pcfg);
    } catch (const SiteNotExecuted&) {
        return rec;
    }
    rec.confirmed = rec.condition_number > pcfg.cond_threshold &&
                    rec.perturbed_rel_error > pcfg.bug_threshold;
    try {
        rec.oracle_rel_error = oracle_relative_error(f, rec.witness, ocfg);
    } catch (const OracleDomainError&) {
        // leave NaN: the verdict above stands, only the measurement is missing
    }
    return rec;
}

bool is_significant(double err) noexcept {
    return err > 0.001;   // NaN compares false
}

} // namespace fperr
