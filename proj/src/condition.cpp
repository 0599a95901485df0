#include "fperr/condition.hpp"

#include <cmath>
#include <limits>

namespace fperr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Gamma for a unary op given its recorded argument and recorded result.
/// Formulas are |x * f'(x) / f(x)| reduced per op; each uses the recorded
/// result r in the denominator role so that results rounded to exact zero
/// register as infinitely ill-conditioned.
double unary_condition(OpKind k, double x, double r) {
    switch (k) {
        case OpKind::Sin:
            // |x * cos x / sin x|
            return r != 0.0 ? std::fabs(x / std::tan(x)) : kInf;
        case OpKind::Cos:
            // |x * sin x / cos x|
            return std::fabs(x * std::tan(x));
        case OpKind::Tan:
            // |x / (sin x * cos x)|
            return std::fabs(x / (std::sin(x) * std::cos(x)));
        case OpKind::Exp:
            return std::fabs(x);
        case OpKind::Log:
            // |1 / log x|, against the recorded result
            return r != 0.0 ? std::fabs(1.0 / r) : kInf;
        case OpKind::Sqrt:
            return 0.5;
        case OpKind::Asin:
            return r != 0.0 ? std::fabs(x / (std::sqrt(1.0 - x * x) * r)) : kInf;
        case OpKind::Acos:
            return r != 0.0 ? std::fabs(x / (std::sqrt(1.0 - x * x) * r)) : kInf;
        case OpKind::Atan:
            return r != 0.0 ? std::fabs(x / ((1.0 + x * x) * r)) : kInf;
        case OpKind::Sinh:
            return r != 0.0 ? std::fabs(x * std::cosh(x) / r) : kInf;
        case OpKind::Cosh:
            return std::fabs(x * std::tanh(x));
        case OpKind::Tanh:
            return r != 0.0 ? std::fabs(x / (std::cosh(x) * std::cosh(x) * r)) : kInf;
        default:
            return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

double condition_number(const TraceRecord& rec) {
    const double a = rec.operands[0];
    const double b = rec.operands[1];
    if (!std::isfinite(a) || (rec.operand_count() == 2 && !std::isfinite(b))) {
        throw InvalidRecord("condition_number: non-finite operand");
    }
    switch (rec.op) {
        case OpKind::Add:
        case OpKind::Sub: {
            const double num = std::max(std::fabs(a), std::fabs(b));
            if (rec.result == 0.0) return num > 0.0 ? kInf : 0.0;
            return num / std::fabs(rec.result);
        }
        case OpKind::Mul:
        case OpKind::Div:
            return 1.0;
        case OpKind::Pow: {
            const double base_sens = std::fabs(b);
            const double exp_sens = std::fabs(b * std::log(a));
            return std::max(base_sens, exp_sens);
        }
        default:
            return unary_condition(rec.op, a, rec.result);
    }
}

std::vector<DangerSpec> danger_specs(OpKind op, const CatalogConfig& cfg) {
    using K = DangerSpec::Kind;
    switch (op) {
        case OpKind::Add:
        case OpKind::Sub:
        case OpKind::Sin:
        case OpKind::Cos:
        case OpKind::Log:
            return {{K::FixedValue, 0.0}};
        case OpKind::Tan:
            return {{K::FixedValue, 0.0}, {K::Infinity, 0.0}};
        case OpKind::Exp:
        case OpKind::Sinh:
        case OpKind::Cosh:
            if (cfg.include_overflow_dangers) return {{K::Infinity, 0.0}};
            return {};
        default:
            return {};
    }
}

std::vector<std::pair<SiteId, double>> flag_dangerous_sites(
    const ExecutionTrace& trace, double threshold, int* skipped_nonfinite) {
    std::vector<std::pair<SiteId, double>> flagged;
    int skipped = 0;
    for (const auto& rec : trace.records) {
        double gamma;
        try {
            gamma = condition_number(rec);
        } catch (const InvalidRecord&) {
            ++skipped;
            continue;
        }
        if (gamma > threshold) flagged.emplace_back(rec.site, gamma);
    }
    if (skipped_nonfinite) *skipped_nonfinite = skipped;
    return flagged;
}

const char* condition_formula_text(OpKind op) {
    switch (op) {
        case OpKind::Add:
        case OpKind::Sub: return "max(|a|,|b|) / |a op b|";
        case OpKind::Mul:
        case OpKind::Div: return "1";
        case OpKind::Sin: return "|x cos(x) / sin(x)|";
        case OpKind::Cos: return "|x sin(x) / cos(x)|";
        case OpKind::Tan: return "|x / (sin(x) cos(x))|";
        case OpKind::Asin: return "|x / (sqrt(1-x^2) asin(x))|";
        case OpKind::Acos: return "|x / (sqrt(1-x^2) acos(x))|";
        case OpKind::Atan: return "|x / ((1+x^2) atan(x))|";
        case OpKind::Exp: return "|x|";
        case OpKind::Log: return "|1 / log(x)|";
        case OpKind::Sqrt: return "1/2";
        case OpKind::Sinh: return "|x cosh(x) / sinh(x)|";
        case OpKind::Cosh: return "|x sinh(x) / cosh(x)|";
        case OpKind::Tanh: return "|x / (sinh(x) cosh(x))|";
        case OpKind::Pow: return "max(|b|, |b log(a)|)";
    }
    return "?";
}

} // namespace fperr
