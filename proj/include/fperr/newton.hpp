#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace fperr {

struct SolverConfig {
    int max_iter = 20;
    double tol_f = 1e-15;      // |g| below this is a root (the only SUCCESS)
    double tol_df = 1e-10;     // |g'| (or gradient norm) below this is flat
    double tol_step = 1e-10;   // |step| below this stalls the iteration
    double fd_scale = 1.4901161193847656e-08;   // 2^-26, relative central-difference step
};

enum class SolveStatus {
    ConvergedResidual,        // |g| < tol_f — the only status that yields candidates
    StoppedFlatDerivative,
    StoppedSmallStep,
    MaxIterations,
    Diverged,                 // NaN/Inf residual, derivative, or iterate
};

[[nodiscard]] constexpr const char* to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::ConvergedResidual: return "ConvergedResidual";
        case SolveStatus::StoppedFlatDerivative: return "StoppedFlatDerivative";
        case SolveStatus::StoppedSmallStep: return "StoppedSmallStep";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::Diverged: return "Diverged";
    }
    return "?";
}

struct SolveOutcome {
    SolveStatus status = SolveStatus::Diverged;
    std::vector<double> root;
    int iterations = 0;
    /// (inputs, residual) per visited point, initial point included, so
    /// path.size() == iterations + 1.
    std::vector<std::pair<std::vector<double>, double>> path;
};

using ScalarFn = std::function<double(double)>;
using FieldFn = std::function<double(std::span<const double>)>;

/// Central difference (g(x+h) - g(x-h)) / (2h) with h = fd_scale * max(|x|,1).
[[nodiscard]] double central_difference(const ScalarFn& g, double x, const SolverConfig& cfg);

/// Componentwise central differences, h_i = fd_scale * max(|x_i|,1).
[[nodiscard]] std::vector<double> gradient_fd(const FieldFn& g, std::span<const double> x,
                                              const SolverConfig& cfg);

/// Newton-Raphson in one variable. Stop checks run at the top of each
/// iteration in the order: converged (tol_f), stalled (a small step was TAKEN
/// last iteration and the new residual still isn't a root), iteration cap.
/// Derivative problems (NaN/Inf -> Diverged, |d| < tol_df -> flat) are
/// checked before each step. A NaN/Inf iterate or residual ends the solve as
/// Diverged with the path up to the failure.
[[nodiscard]] SolveOutcome newton_solve(const ScalarFn& g, double x0, const SolverConfig& cfg);

/// Minimal-norm Newton for a single scalar residual of n variables:
/// delta = -g(x) * grad / ||grad||^2, the least-norm solution of the
/// underdetermined linearization. Stopping uses ||grad|| against tol_df and
/// |g|/||grad|| (the step norm) against tol_step. For n = 1 this DELEGATES to
/// newton_solve — g*d/d^2 and g/d are not bit-identical in floating point,
/// and the reduction property demands bit-exact agreement.
[[nodiscard]] SolveOutcome newton_solve_multi(const FieldFn& g, std::span<const double> x0,
                                              const SolverConfig& cfg);

} // namespace fperr
