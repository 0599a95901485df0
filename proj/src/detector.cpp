#include "fperr/detector.hpp"

#include "fperr/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

namespace fperr {

namespace {

constexpr double kTrueMin = 5e-324;   // smallest subnormal: effective lower edge of [0, ...]

/// Draw one point strictly inside a same-sign interval of the partition
/// (0 is always an endpoint, so no interval straddles it). Intervals wider
/// than two decades sample log-uniformly in magnitude — uniform sampling of
/// [1e5, 1e8] would almost never probe near 1e5.
double sample_in(double lo, double hi, double u) {
    if (lo >= 0.0) {
        const double lo_eff = lo > 0.0 ? lo : kTrueMin;
        const double decades = std::log10(hi) - std::log10(lo_eff);
        double v;
        if (decades > 2.0) {
            v = std::exp(std::log(lo_eff) + u * (std::log(hi) - std::log(lo_eff)));
        } else {
            v = lo + u * (hi - lo);
        }
        v = std::min(std::max(v, lo_eff), hi);
        if (v <= lo) v = std::nextafter(lo, hi);
        if (v >= hi) v = std::nextafter(hi, lo);
        return v;
    }
    return -sample_in(-hi, -lo, u);
}

struct SeedCell {
    std::size_t index;   // interval index in the FULL partition (stream id)
    double lo, hi;
};

/// Partition intervals clipped to [dlo, dhi], keeping original indices so
/// every interval's RNG stream is stable whether or not neighbors get
/// clipped away.
std::vector<SeedCell> clipped_cells(const IntervalPartition& p, double dlo, double dhi) {
    std::vector<SeedCell> cells;
    for (std::size_t i = 0; i + 1 < p.endpoints.size(); ++i) {
        const double lo = std::max(p.endpoints[i], dlo);
        const double hi = std::min(p.endpoints[i + 1], dhi);
        if (lo < hi) cells.push_back({i, lo, hi});
    }
    return cells;
}

// Coarse per-dimension boundaries for multivariate seeding: 4 cells covering
// negative-huge, negative-moderate, positive-moderate, positive-huge.
constexpr double kCoarse[] = {-1e20, -2.0, 0.0, 2.0, 1e20};

/// The zero-adjacent coarse cells sample uniformly (magnitudes O(1) up to the
/// cell edge) rather than log-uniformly; pair-cancellation residuals need
/// moderate-to-large magnitudes to produce detectable output responses.
double coarse_sample(double lo, double hi, double u) {
    if (lo == 0.0) return lo + u * (hi - lo);
    if (hi == 0.0) return -(u * (0.0 - lo));
    return sample_in(lo, hi, u);
}

std::vector<std::vector<double>> sample_lattice(std::uint64_t seed, int n, int per_dim) {
    per_dim = std::clamp(per_dim, 1, 4);
    std::vector<std::vector<double>> lattice{{}};
    for (int dim = 0; dim < n; ++dim) {
        std::vector<double> axis;
        for (int j = 0; j < per_dim; ++j) {
            const std::uint64_t z = mix2(mix2(seed, 1000 + static_cast<std::uint64_t>(dim)),
                                         static_cast<std::uint64_t>(j));
            axis.push_back(coarse_sample(kCoarse[j], kCoarse[j + 1], u01(z)));
        }
        std::vector<std::vector<double>> next;
        next.reserve(lattice.size() * axis.size());
        for (const auto& point : lattice) {
            for (double v : axis) {
                auto q = point;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        }
        lattice = std::move(next);
    }
    if (lattice.size() > 256) lattice.resize(256);
    return lattice;
}

} // namespace

IntervalPartition default_partition() {
    // The published outermost endpoint is 1.8e308, which is beyond DBL_MAX:
    // as a double it saturates to +Inf, and the containment clamp makes the
    // extreme cells sample at the largest finite magnitudes.
    constexpr double kEdge = std::numeric_limits<double>::infinity();
    static const std::vector<double> positive = {0.0,  1e-100, 0.25, 0.5,  1.0,  2.0,
                                                 4.0,  8.0,    16.0, 32.0, 1e5,  1e8,
                                                 1e11, 1e14,   1e17, 1e20, kEdge};
    IntervalPartition p;
    for (auto it = positive.rbegin(); it != positive.rend() - 1; ++it) p.endpoints.push_back(-*it);
    for (double e : positive) p.endpoints.push_back(e);
    return p;
}

std::vector<double> sample_initial_points(const IntervalPartition& p, std::uint64_t seed) {
    std::vector<double> points;
    for (std::size_t i = 0; i + 1 < p.endpoints.size(); ++i) {
        points.push_back(sample_in(p.endpoints[i], p.endpoints[i + 1], u01(mix2(seed, i))));
    }
    return points;
}

std::vector<CandidateInput> detect(const CorpusFunction& f, const DetectionConfig& cfg,
                                   DetectionStats* stats) {
    const auto start = std::chrono::steady_clock::now();
    DetectionStats local;
    std::vector<std::vector<double>> seeds;

    if (f.arity == 1) {
        const Interval box = f.domain.empty() ? Interval{} : f.domain[0];
        for (const SeedCell& cell : clipped_cells(cfg.partition, box.lo, box.hi)) {
            seeds.push_back({sample_in(cell.lo, cell.hi, u01(mix2(cfg.rng_seed, cell.index)))});
        }
    } else {
        seeds = sample_lattice(cfg.rng_seed, f.arity, cfg.multi_input_seeds_per_dim);
    }
    local.seeds = static_cast<int>(seeds.size());

    std::vector<CandidateInput> cands;
    std::set<std::tuple<std::int32_t, int, double>> target_keys;
    for (const std::vector<double>& s : seeds) {
        for (const ResidualTarget& t : enumerate_targets(f, s)) {
            target_keys.insert({t.site.op_index, static_cast<int>(t.spec.kind), t.spec.value});
            ++local.solves;
            SolveOutcome outcome;
            if (f.arity == 1) {
                outcome = newton_solve(
                    [&](double x) { return residual(t, std::span<const double>(&x, 1)).value; },
                    s[0], cfg.solver);
            } else {
                outcome = newton_solve_multi(
                    [&](std::span<const double> xs) { return residual(t, xs).value; }, s,
                    cfg.solver);
            }
            switch (outcome.status) {
                case SolveStatus::ConvergedResidual: ++local.converged; break;
                case SolveStatus::StoppedFlatDerivative: ++local.stopped_flat_derivative; break;
                case SolveStatus::StoppedSmallStep: ++local.stopped_small_step; break;
                case SolveStatus::MaxIterations: ++local.max_iterations; break;
                case SolveStatus::Diverged: ++local.diverged; break;
            }
            if (outcome.status == SolveStatus::ConvergedResidual) {
                CandidateInput c;
                c.function_id = f.id;
                c.target = t;
                c.witness = outcome.root;
                c.residual_at_witness = residual(t, c.witness).value;
                c.solve = std::move(outcome);
                cands.push_back(std::move(c));
            }
        }
    }
    local.distinct_targets = static_cast<int>(target_keys.size());
    local.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();
    if (stats) *stats = local;
    return cands;
}

std::vector<BugRecord> dedup_bugs(const std::vector<CandidateInput>&,
                                  const std::vector<BugRecord>& verdicts) {
    std::vector<BugRecord> best;
    for (const BugRecord& v : verdicts) {
        if (!v.confirmed) continue;
        auto it = std::find_if(best.begin(), best.end(), [&](const BugRecord& b) {
            return b.site == v.site;
        });
        if (it == best.end()) {
            best.push_back(v);
            continue;
        }
        // A real measurement displaces NaN; otherwise strictly-larger wins,
        // ties keep the incumbent (first seen).
        const bool replace = !std::isnan(v.oracle_rel_error) &&
                             (std::isnan(it->oracle_rel_error) ||
                              v.oracle_rel_error > it->oracle_rel_error);
        if (replace) *it = v;
    }
    std::sort(best.begin(), best.end(), [](const BugRecord& a, const BugRecord& b) {
        return std::tie(a.site.function_id, a.site.op_index) <
               std::tie(b.site.function_id, b.site.op_index);
    });
    return best;
}

DetectionResult run_detection(const CorpusFunction& f, const DetectionConfig& cfg,
                              const PerturbationConfig& pcfg, const OracleConfig& ocfg) {
    DetectionResult r;
    r.candidates = detect(f, cfg, &r.stats);
    r.verdicts.reserve(r.candidates.size());
    for (const CandidateInput& c : r.candidates) {
        r.verdicts.push_back(confirm_candidate(f, c, pcfg, ocfg));
    }
    r.bugs = dedup_bugs(r.candidates, r.verdicts);
    return r;
}

} // namespace fperr
