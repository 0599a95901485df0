#pragma once

#include "fperr/bigfloat.hpp"
#include "fperr/candidate.hpp"
#include "fperr/corpus.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fperr {

/// Thrown by the perturbation entry points when the requested site is never
/// reached at the given inputs (e.g. a domain error upstream of it).
class SiteNotExecuted : public std::runtime_error {
public:
    SiteNotExecuted(const std::string& function_id, std::int32_t op_index)
        : std::runtime_error("site " + std::to_string(op_index) + " of " + function_id +
                             " did not execute at these inputs") {}
};

struct PerturbationConfig {
    double delta = 1e-14;          // relative perturbation magnitude
    double cond_threshold = 1e5;   // condition number above this is dangerous
    double bug_threshold = 1e-10;  // output response above this confirms a bug
};

struct OracleConfig {
    mpfr_prec_t precision_bits = 256;   // >= 128
};

/// A validated candidate: per-site metrics plus the confirmation verdict.
/// confirmed ⇒ condition_number > cond_threshold AND
///             perturbed_rel_error > bug_threshold.
/// Metrics are NaN when they could not be computed (site missing from the
/// re-trace, non-finite operands at the site, oracle domain failure).
struct BugRecord {
    std::string function_id;
    SiteId site;
    OpKind op = OpKind::Add;
    std::vector<double> witness;
    double condition_number = std::numeric_limits<double>::quiet_NaN();
    double perturbed_rel_error = std::numeric_limits<double>::quiet_NaN();
    double oracle_rel_error = std::numeric_limits<double>::quiet_NaN();
    bool confirmed = false;
};

/// Re-execute f with the result of `site` replaced by r·(1 + delta) at the
/// moment it is produced; everything else untouched. Returns the final
/// output. Throws SiteNotExecuted if the site is never reached; a domain
/// error after the site propagates as DomainError.
[[nodiscard]] double evaluate_perturbed(const CorpusFunction& f, std::span<const double> inputs,
                                        const SiteId& site, double delta);

/// Output response to a rounding-error-sized perturbation AT the site: scale
/// one operand slot by (1 + delta) on entry to the site (worst slot wins;
/// slot 1 of a unary op is a no-op) and compare final outputs.
///
/// Both outputs finite: |(pert − plain)/plain|, absolute fallback at
/// plain = 0. Outputs that fail or leave the finite range compare by class:
/// indistinguishable (both domain errors, both NaN, equal infinities) → 0,
/// any class change → +Inf. Witnesses sit on singularities by construction,
/// so these cases are routine, not exotic.
[[nodiscard]] double perturbed_relative_error(const CorpusFunction& f,
                                              std::span<const double> inputs, const SiteId& site,
                                              const PerturbationConfig& cfg);

/// |double result − high-precision result| / |high-precision result|, with
/// absolute fallback when the high-precision value is exactly 0. The inputs
/// (exact doubles) convert losslessly; constants re-parse from their decimal
/// spelling at oracle precision. A double result of NaN reads as error +Inf;
/// ±Inf is error 0 when the true value overflows double range with the same
/// sign (correctly-rounded overflow) and +Inf otherwise. Throws
/// OracleDomainError if the high-precision evaluation leaves a domain.
[[nodiscard]] double oracle_relative_error(const CorpusFunction& f,
                                           std::span<const double> inputs,
                                           const OracleConfig& cfg);

/// Full validation of one candidate: condition number at the site (from a
/// re-trace at the witness), perturbation response, oracle error, and the
/// confirmation verdict. A site that is missing from the re-trace or has
/// non-finite operands yields an unconfirmed record with NaN metrics. The
/// oracle error is informational — it never affects `confirmed`.
[[nodiscard]] BugRecord confirm_candidate(const CorpusFunction& f, const CandidateInput& cand,
                                          const PerturbationConfig& pcfg,
                                          const OracleConfig& ocfg);

/// True iff err > 0.001 (NaN → false): the reporting bar for an error large
/// enough to matter, as opposed to merely measurable.
[[nodiscard]] bool is_significant(double err) noexcept;

} // namespace fperr
