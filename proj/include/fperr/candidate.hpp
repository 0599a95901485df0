#pragma once

#include "fperr/newton.hpp"
#include "fperr/targets.hpp"

#include <string>
#include <vector>

namespace fperr {

/// A solved input suspected of inducing error: Newton converged the target's
/// residual at this witness. Only ConvergedResidual solves become candidates.
struct CandidateInput {
    std::string function_id;
    ResidualTarget target;
    std::vector<double> witness;
    double residual_at_witness = 0.0;
    SolveOutcome solve;
};

} // namespace fperr
