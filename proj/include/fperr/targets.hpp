#pragma once

#include "fperr/condition.hpp"
#include "fperr/corpus.hpp"

#include <limits>
#include <span>
#include <vector>

namespace fperr {

/// One residual equation g = 0 built from a trace site: roots of g are inputs
/// that realize a danger spec at that site.
struct ResidualTarget {
    std::string function_id;
    SiteId site;
    OpKind op = OpKind::Add;
    DangerSpec spec;
};

struct ResidualEvaluation {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool site_executed = false;
};

/// Trace f at the probe and emit one target per (executed site, danger spec),
/// in trace order then spec order. Division sites get their denominator->0
/// danger rerouted to the site that PRODUCED the denominator (known from
/// operand provenance); a denominator coming straight from an input or
/// constant has no producing site and is skipped. If tracing hits a domain
/// error, enumeration runs over the partial trace (possibly empty — an empty
/// list is a valid result).
[[nodiscard]] std::vector<ResidualTarget> enumerate_targets(
    const CorpusFunction& f, std::span<const double> probe, const CatalogConfig& cfg = {});

/// Evaluate the residual at `inputs` by re-tracing and capturing the site's
/// recorded result r:
///   FixedValue(v):  g = r - v
///   Infinity:       g = 1/r, sign preserved (+Inf if r == 0)
/// A site that does not execute (domain error upstream, or data-dependent
/// path) yields NaN with site_executed = false; Newton treats that as
/// divergence.
[[nodiscard]] ResidualEvaluation residual(const CorpusFunction& f, const ResidualTarget& t,
                                          std::span<const double> inputs);

/// Same, resolving the function from the registry by the target's id.
[[nodiscard]] ResidualEvaluation residual(const ResidualTarget& t, std::span<const double> inputs);

} // namespace fperr
