#include "fperr/newton.hpp"

#include <cmath>

namespace fperr {

namespace {

bool bad(double v) noexcept { return std::isnan(v) || std::isinf(v); }

} // namespace

double central_difference(const ScalarFn& g, double x, const SolverConfig& cfg) {
    const double h = cfg.fd_scale * std::max(std::fabs(x), 1.0);
    return (g(x + h) - g(x - h)) / (2.0 * h);
}

std::vector<double> gradient_fd(const FieldFn& g, std::span<const double> x,
                                const SolverConfig& cfg) {
    std::vector<double> grad;
    grad.reserve(x.size());
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = y[i];
        auto gi = [&](double v) {
            y[i] = v;
            const double r = g(y);
            y[i] = xi;
            return r;
        };
        grad.push_back(central_difference(gi, xi, cfg));
    }
    return grad;
}

SolveOutcome newton_solve(const ScalarFn& g, double x0, const SolverConfig& cfg) {
    SolveOutcome out;
    double x = x0;
    double gx = g(x);
    out.path.push_back({{x}, gx});
    int k = 0;
    bool small = false;

    auto finish = [&](SolveStatus st) {
        out.status = st;
        out.root = {x};
        out.iterations = k;
        return out;
    };

    if (bad(gx)) return finish(SolveStatus::Diverged);
    for (;;) {
        if (std::fabs(gx) < cfg.tol_f) return finish(SolveStatus::ConvergedResidual);
        if (small) return finish(SolveStatus::StoppedSmallStep);
        if (k >= cfg.max_iter) return finish(SolveStatus::MaxIterations);
        const double d = central_difference(g, x, cfg);
        if (bad(d)) return finish(SolveStatus::Diverged);
        if (std::fabs(d) < cfg.tol_df) return finish(SolveStatus::StoppedFlatDerivative);
        const double step = gx / d;
        small = std::fabs(step) < cfg.tol_step;
        x = x - step;
        if (bad(x)) {
            // The bad iterate is reported as the root but not recorded on the
            // path; the failed update still counts as an iteration.
            ++k;
            return finish(SolveStatus::Diverged);
        }
        gx = g(x);
        ++k;
        out.path.push_back({{x}, gx});
        if (bad(gx)) return finish(SolveStatus::Diverged);
    }
}

SolveOutcome newton_solve_multi(const FieldFn& g, std::span<const double> x0,
                                const SolverConfig& cfg) {
    const std::size_t n = x0.size();
    if (n == 1) {
        // g*d/d^2 rounds differently from g/d, so the scalar path is the
        // authoritative one; delegating keeps the two solvers bit-identical.
        const double x00 = x0[0];
        return newton_solve([&](double v) {
            const double arr[1] = {v};
            return g(std::span<const double>(arr, 1));
        }, x00, cfg);
    }

    SolveOutcome out;
    std::vector<double> x(x0.begin(), x0.end());
    double gx = g(x);
    out.path.push_back({x, gx});
    int k = 0;
    bool small = false;

    auto finish = [&](SolveStatus st) {
        out.status = st;
        out.root = x;
        out.iterations = k;
        return out;
    };

    if (bad(gx)) return finish(SolveStatus::Diverged);
    for (;;) {
        if (std::fabs(gx) < cfg.tol_f) return finish(SolveStatus::ConvergedResidual);
        if (small) return finish(SolveStatus::StoppedSmallStep);
        if (k >= cfg.max_iter) return finish(SolveStatus::MaxIterations);
        const std::vector<double> grad = gradient_fd(g, x, cfg);
        bool grad_bad = false;
        for (double d : grad) {
            if (bad(d)) { grad_bad = true; break; }
        }
        if (grad_bad) return finish(SolveStatus::Diverged);
        double nrm2 = 0.0;
        for (double d : grad) nrm2 += d * d;
        if (std::sqrt(nrm2) < cfg.tol_df) return finish(SolveStatus::StoppedFlatDerivative);
        const double step_norm = std::fabs(gx) / std::sqrt(nrm2);
        small = step_norm < cfg.tol_step;
        // Least-norm update of the underdetermined linearization.
        bool x_bad = false;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = x[i] - gx * grad[i] / nrm2;
            if (bad(x[i])) x_bad = true;
        }
        if (x_bad) {
            ++k;
            return finish(SolveStatus::Diverged);
        }
        gx = g(x);
        ++k;
        out.path.push_back({x, gx});
        if (bad(gx)) return finish(SolveStatus::Diverged);
    }
}

} // namespace fperr
