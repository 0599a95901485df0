#include "fperr/trace.hpp"

#include <cmath>
#include <cstdlib>

namespace fperr {

std::optional<OpKind> op_from_string(std::string_view name) noexcept {
    for (int i = 0; i <= static_cast<int>(OpKind::Pow); ++i) {
        auto k = static_cast<OpKind>(i);
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

double raw_apply(OpKind k, double a, double b) noexcept {
    switch (k) {
        case OpKind::Add: return a + b;
        case OpKind::Sub: return a - b;
        case OpKind::Mul: return a * b;
        case OpKind::Div: return a / b;
        case OpKind::Sin: return std::sin(a);
        case OpKind::Cos: return std::cos(a);
        case OpKind::Tan: return std::tan(a);
        case OpKind::Asin: return std::asin(a);
        case OpKind::Acos: return std::acos(a);
        case OpKind::Atan: return std::atan(a);
        case OpKind::Exp: return std::exp(a);
        case OpKind::Log: return std::log(a);
        case OpKind::Sqrt: return std::sqrt(a);
        case OpKind::Sinh: return std::sinh(a);
        case OpKind::Cosh: return std::cosh(a);
        case OpKind::Tanh: return std::tanh(a);
        case OpKind::Pow: return std::pow(a, b);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool violates_domain(OpKind k, double a, double b) noexcept {
    (void)b;
    if (!std::isfinite(a)) return false;   // non-finite propagates silently
    switch (k) {
        case OpKind::Log: return a <= 0.0;
        case OpKind::Sqrt: return a < 0.0;
        case OpKind::Asin:
        case OpKind::Acos: return std::fabs(a) > 1.0;
        default: return false;             // div/pow follow IEEE, never throw
    }
}

DVal DoubleCtx::constant(const char* decimal) const {
    return {std::strtod(decimal, nullptr), -1};
}

DVal DoubleCtx::op(OpKind k, DVal a) { return run(k, a, nullptr); }
DVal DoubleCtx::op(OpKind k, DVal a, DVal b) { return run(k, a, &b); }

DVal DoubleCtx::run(OpKind k, DVal a, const DVal* b) {
    const std::int32_t idx = next_site_++;

    if (violates_domain(k, a.v, b ? b->v : 0.0)) {
        throw DomainError(k, idx, std::move(records));
    }

    double av = a.v;
    double bv = b ? b->v : 0.0;
    if ((mode == Mode::PerturbOperand || mode == Mode::PerturbResult ||
         mode == Mode::Capture) && idx == target_site) {
        site_hit = true;
    }
    if (mode == Mode::PerturbOperand && idx == target_site) {
        if (slot == 0) av = a.v * (1.0 + delta);
        else if (slot == 1 && b != nullptr) bv = b->v * (1.0 + delta);
    }

    double r = raw_apply(k, av, bv);
    if (mode == Mode::PerturbResult && idx == target_site) {
        r = r * (1.0 + delta);
    }

    if (mode == Mode::Trace) {
        TraceRecord rec;
        rec.site = SiteId{function_id_, idx};
        rec.op = k;
        rec.operands = {a.v, b ? b->v : 0.0};
        rec.result = r;
        rec.operand_sites = {a.site, b ? b->site : -1};
        records.push_back(std::move(rec));
    }
    if (mode == Mode::Capture && idx == target_site) {
        captured = r;
    }
    return {r, idx};
}

} // namespace fperr
