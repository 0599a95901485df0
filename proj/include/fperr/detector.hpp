#pragma once

#include "fperr/candidate.hpp"
#include "fperr/filter.hpp"

#include <cstdint>
#include <vector>

namespace fperr {

/// The input-space partition the detector seeds from: 33 endpoints spanning
/// [-1.8e308, 1.8e308], symmetric about 0, defining exactly 32 intervals.
struct IntervalPartition {
    std::vector<double> endpoints;

    [[nodiscard]] std::size_t interval_count() const noexcept {
        return endpoints.empty() ? 0 : endpoints.size() - 1;
    }
};

/// The canonical partition: positive endpoints
/// {0, 1e-100, 0.25, 0.5, 1, 2, 4, 8, 16, 32, 1e5, 1e8, 1e11, 1e14, 1e17,
///  1e20, 1.8e308}, mirrored through 0.
[[nodiscard]] IntervalPartition default_partition();

struct DetectionConfig {
    IntervalPartition partition = default_partition();
    std::uint64_t rng_seed = 0;
    SolverConfig solver;
    double cond_threshold = 1e5;
    /// Points per dimension for arity > 1 (coarse 4-cell grid per dimension,
    /// cross product capped at 256 seeds). At most 4.
    int multi_input_seeds_per_dim = 4;
};

struct DetectionStats {
    int seeds = 0;              // initial points tried
    int distinct_targets = 0;   // distinct (site, danger) pairs enumerated
    int solves = 0;             // Newton runs (one per seed x target)
    int converged = 0;
    int stopped_flat_derivative = 0;
    int stopped_small_step = 0;
    int max_iterations = 0;
    int diverged = 0;
    double wall_ms = 0.0;
};

/// One finite double strictly inside each interval of the partition,
/// deterministic in (partition, seed). Interval i draws from its own RNG
/// stream mix2(seed, i): log-uniform in magnitude when the interval spans
/// more than two decades, uniform otherwise.
[[nodiscard]] std::vector<double> sample_initial_points(const IntervalPartition& p,
                                                        std::uint64_t seed);

/// Run the full search for one function: seed initial points (intervals are
/// clipped to the function's domain box, keeping each interval's stream
/// index; arity > 1 uses a coarse per-dimension lattice instead), enumerate
/// residual targets at every seed, Newton-solve each, and return every
/// converged candidate — duplicates included, dedup happens after filtering.
/// Per-solve failures are tallied in `stats`, never thrown.
[[nodiscard]] std::vector<CandidateInput> detect(const CorpusFunction& f,
                                                 const DetectionConfig& cfg,
                                                 DetectionStats* stats = nullptr);

/// Collapse confirmed verdicts into one bug per site, keeping the witness
/// with the largest oracle relative error (a NaN measurement never displaces
/// a real one; exact ties keep the first seen). Output ordered by site.
/// `cands` pairs 1:1 with `verdicts` (the detect output the verdicts came
/// from); only the verdicts carry information used here.
[[nodiscard]] std::vector<BugRecord> dedup_bugs(const std::vector<CandidateInput>& cands,
                                                const std::vector<BugRecord>& verdicts);

/// The whole pipeline for one function: detect -> confirm each candidate ->
/// dedup. Returned verdicts pair 1:1 with candidates.
struct DetectionResult {
    std::vector<CandidateInput> candidates;
    std::vector<BugRecord> verdicts;
    std::vector<BugRecord> bugs;
    DetectionStats stats;
};

[[nodiscard]] DetectionResult run_detection(const CorpusFunction& f, const DetectionConfig& cfg,
                                            const PerturbationConfig& pcfg = {},
                                            const OracleConfig& ocfg = {});

} // namespace fperr
