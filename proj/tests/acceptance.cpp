// Acceptance checks for the shipped detector. Each criterion prints exactly
// one "C<n> PASS/FAIL — detail" line (plus indented evidence lines where the
// verdict needs them) and the process exits 0 only if every criterion that
// ran passed. Pass a criterion number as the only argument to run just one.

#include "fperr/report.hpp"
#include "fperr/rng.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace fperr;

namespace {

bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

double parse(const char* s) {
    return std::strtod(s, nullptr);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

/// Collects sub-checks for one criterion; failures accumulate into the detail.
struct Crit {
    bool ok = true;
    std::string fails;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!fails.empty()) fails += "; ";
            fails += what;
        }
    }
};

std::string set_text(const std::set<int>& s) {
    std::string t = "{";
    for (int v : s) {
        if (t.size() > 1) t += ",";
        t += std::to_string(v);
    }
    return t + "}";
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// --- C1: a hairline cancellation is found, traced, and quantified ----------

bool criterion1(std::string& detail) {
    Timer timer;
    Crit c;
    const double x = parse("0.411516846067");
    const auto& f1 = lookup("f1").function;
    const auto trace = evaluate_traced(f1, std::vector<double>{x});

    c.require(trace.final_result > -4.48e-13 && trace.final_result < -4.46e-13,
              "plain result " + num(trace.final_result) + " outside [-4.48e-13,-4.46e-13]");
    c.require(trace.records.size() == 2, "expected 2 trace records");
    c.require(same_bits(trace.records[0].result, parse("0.3999999999995527")),
              "sin record is not 0.3999999999995527");
    const double gamma = condition_number(trace.records[1]);
    c.require(gamma > 1e10, "sub-site condition number " + num(gamma) + " <= 1e10");
    const double err = oracle_relative_error(f1, std::vector<double>{x}, {});
    c.require(err > 5e-5 && err < 9e-5,
              "oracle relative error " + num(err) + " outside [5e-5,9e-5]");
    const double secs = timer.seconds();
    c.require(secs < 1.0, "took " + num(secs) + "s (>= 1s)");

    detail = c.ok ? "f(0.411516846067) = " + num(trace.final_result) + ", cond " + num(gamma) +
                        ", true rel err " + num(err) + ", " + num(secs * 1000) + " ms"
                  : c.fails;
    return c.ok;
}

// --- C2: Newton on the cubic reproduces the textbook iterate sequence ------

bool criterion2(std::string& detail) {
    Crit c;
    const auto& f5 = lookup("f5").function;
    const auto targets = enumerate_targets(f5, std::vector<double>{2.0});
    c.require(targets.size() == 2, "expected 2 residual targets on the cubic");
    if (!c.ok) { detail = c.fails; return false; }

    const auto& t = targets.back();   // the final subtraction: residual == f itself
    const auto out = newton_solve(
        [&](double v) { return residual(t, std::span<const double>(&v, 1)).value; }, 2.0, {});

    c.require(out.status == SolveStatus::ConvergedResidual,
              std::string("status ") + to_string(out.status));
    c.require(out.iterations <= 6, "took " + std::to_string(out.iterations) + " iterations (> 6)");
    c.require(out.path.size() == static_cast<std::size_t>(out.iterations) + 1,
              "path length != iterations+1");
    if (out.path.size() >= 3) {
        const double x1 = out.path[1].first[0];
        const double x2 = out.path[2].first[0];
        c.require(std::fabs(x1 - 2.1) <= 2.1 * 1e-15, "first iterate " + num(x1) + " != 2.1");
        c.require(std::fabs(x2 - parse("2.094568121077716")) < 1e-12,
                  "second iterate " + num(x2) + " != 2.094568121077716");
    } else {
        c.require(false, "path too short");
    }
    c.require(std::fabs(out.root[0] - parse("2.0945514815423265")) < 1e-9,
              "root " + num(out.root[0]) + " != 2.0945514815423265");

    detail = c.ok ? "x: 2 -> 2.1 -> 2.0945681... -> root " + format_double(out.root[0]) + " in " +
                        std::to_string(out.iterations) + " iterations"
                  : c.fails;
    return c.ok;
}

// --- C3: shipped defaults and the search partition are exactly as documented

bool criterion3(std::string& detail) {
    Crit c;
    const SolverConfig s{};
    c.require(s.max_iter == 20, "max_iter != 20");
    c.require(same_bits(s.tol_f, 1e-15), "tol_f != 1e-15");
    c.require(same_bits(s.tol_df, 1e-10), "tol_df != 1e-10");
    c.require(same_bits(s.tol_step, 1e-10), "tol_step != 1e-10");
    c.require(same_bits(s.fd_scale, 0x1p-26), "fd_scale != 2^-26");
    c.require(same_bits(DetectionConfig{}.cond_threshold, 1e5), "cond_threshold != 1e5");
    c.require(same_bits(PerturbationConfig{}.delta, 1e-14), "delta != 1e-14");
    c.require(same_bits(PerturbationConfig{}.bug_threshold, 1e-10), "bug_threshold != 1e-10");
    c.require(OracleConfig{}.precision_bits == 256, "precision_bits != 256");

    const auto p = default_partition();
    c.require(p.endpoints.size() == 33, "expected 33 endpoints");
    c.require(p.interval_count() == 32, "expected 32 intervals");
    const char* spell[] = {"0",    "1e-100", "0.25", "0.5",  "1",    "2",
                           "4",    "8",      "16",   "32",   "1e5",  "1e8",
                           "1e11", "1e14",   "1e17", "1e20", "1.8e308"};
    std::vector<double> want;
    for (int i = 16; i >= 1; --i) want.push_back(-parse(spell[i]));
    for (const char* sp : spell) want.push_back(parse(sp));
    bool exact = want.size() == p.endpoints.size();
    for (std::size_t i = 0; exact && i < want.size(); ++i) {
        exact = same_bits(want[i], p.endpoints[i]);
    }
    c.require(exact, "partition endpoints differ from their documented decimal spellings");
    c.require(std::isinf(p.endpoints.back()) && p.endpoints.back() > 0,
              "outermost edge (1.8e308) did not saturate to +inf");

    detail = c.ok ? "solver (20, 1e-15, 1e-10, 1e-10, 2^-26), 32 intervals, edges bit-exact"
                  : c.fails;
    return c.ok;
}

// --- C4: distant starting points funnel to the cancellation witness --------

bool criterion4(std::string& detail) {
    Timer timer;
    Crit c;
    const auto& f1 = lookup("f1").function;
    const auto targets = enumerate_targets(f1, std::vector<double>{0.5});
    c.require(targets.size() == 2, "expected 2 residual targets");
    if (!c.ok) { detail = c.fails; return false; }
    const auto& t = targets.back();   // the subtraction site

    int good = 0;
    const double starts[] = {-3.0, -1.0, 0.9, 2.2, 3.0};
    for (double s0 : starts) {
        const auto out = newton_solve(
            [&](double v) { return residual(t, std::span<const double>(&v, 1)).value; }, s0, {});
        if (out.status == SolveStatus::ConvergedResidual &&
            std::fabs(std::sin(out.root[0]) - 0.4) < 1e-12) {
            ++good;
        }
    }
    const double secs = timer.seconds();
    c.require(good >= 3, "only " + std::to_string(good) + "/5 starts reached the witness");
    c.require(secs < 1.0, "took " + num(secs) + "s (>= 1s)");
    detail = c.ok ? std::to_string(good) + "/5 starts land on sin(x)=0.4, " +
                        num(secs * 1000) + " ms"
                  : c.fails;
    return c.ok;
}

// --- C5: perturbation screening separates benign from dangerous sites ------

bool criterion5(std::string& detail) {
    Crit c;
    const auto& f1 = lookup("f1").function;
    const PerturbationConfig pcfg{};

    double worst_benign = 0.0;
    for (std::uint64_t k = 0; k < 50; ++k) {
        const double x = 3.141592653589793 + (u01(mix2(4242, k)) * 2.0 - 1.0) * 1e-3;
        worst_benign = std::max(
            worst_benign,
            perturbed_relative_error(f1, std::vector<double>{x}, SiteId{"f1", 0}, pcfg));
    }
    double best_danger = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < 50; ++k) {
        const double x = std::asin(0.4) + (u01(mix2(2424, k)) * 2.0 - 1.0) * 1e-9;
        best_danger = std::min(
            best_danger,
            perturbed_relative_error(f1, std::vector<double>{x}, SiteId{"f1", 1}, pcfg));
    }

    c.require(worst_benign < 1e-10,
              "worst benign response " + num(worst_benign) + " >= 1e-10");
    c.require(best_danger > 1e-6, "best dangerous response " + num(best_danger) + " <= 1e-6");
    c.require(best_danger > 1e4 * worst_benign, "separation below 4 orders of magnitude");
    detail = c.ok ? "benign sin-site max " + num(worst_benign) + " vs dangerous sub-site min " +
                        num(best_danger) + " over 50+50 inputs"
                  : c.fails;
    return c.ok;
}

// --- C6: the full pipeline confirms at least one bug in every function -----

bool criterion6(std::string& detail) {
    Timer timer;
    Crit c;
    std::string found;
    for (const CorpusEntry& e : registry()) {
        const auto r = run_detection(e.function, {});
        std::set<int> sites;
        for (const BugRecord& b : r.bugs) sites.insert(b.site.op_index);
        c.require(!r.bugs.empty(), e.function.id + " has no confirmed bug");
        if (!found.empty()) found += " ";
        found += e.function.id + set_text(sites);
    }
    const double secs = timer.seconds();
    c.require(secs < 30.0, "took " + num(secs) + "s (>= 30s)");
    detail = c.ok ? found + ", " + num(secs) + " s" : c.fails + " (" + found + ")";
    return c.ok;
}

// --- C7: the multivariate solver collapses exactly to the scalar one -------

bool criterion7(std::string& detail) {
    Crit c;
    int pairs = 0, mismatches = 0;
    const double starts[] = {-3.0, -1.0, 0.9, 2.2, 3.0, 17.0, 100.0};
    for (const char* fid : {"f1", "f2", "f3", "f4", "f5", "f8"}) {
        const auto& f = lookup(fid).function;
        for (const auto& t : enumerate_targets(f, std::vector<double>{0.7})) {
            for (double s0 : starts) {
                ++pairs;
                const auto scalar = newton_solve(
                    [&](double v) { return residual(t, std::span<const double>(&v, 1)).value; },
                    s0, {});
                const auto multi = newton_solve_multi(
                    [&](std::span<const double> xs) { return residual(t, xs).value; },
                    std::vector<double>{s0}, {});
                bool same = scalar.status == multi.status &&
                            scalar.iterations == multi.iterations &&
                            multi.root.size() == 1 && same_bits(scalar.root[0], multi.root[0]) &&
                            scalar.path.size() == multi.path.size();
                for (std::size_t k = 0; same && k < scalar.path.size(); ++k) {
                    same = multi.path[k].first.size() == 1 &&
                           same_bits(scalar.path[k].first[0], multi.path[k].first[0]) &&
                           same_bits(scalar.path[k].second, multi.path[k].second);
                }
                if (!same) ++mismatches;
            }
        }
    }
    c.require(pairs >= 100, "only " + std::to_string(pairs) + " solve pairs exercised");
    c.require(mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(pairs) +
                                   " pairs differ");
    detail = c.ok ? std::to_string(pairs) + " solves bit-identical (status, iterates, paths)"
                  : c.fails;
    return c.ok;
}

// --- C8: confirmed site sets are identical across 20 seeds ------------------

bool criterion8(std::string& detail) {
    const std::map<std::string, std::set<int>> documented{
        {"f1", {1}}, {"f2", {1}}, {"f3", {1}}, {"f4", {0, 1}}, {"f5", {4}}};
    bool identical = true;
    bool documented_present = true;
    std::string flicker_text;

    for (const char* fid : {"f1", "f2", "f3", "f4", "f5"}) {
        const auto& f = lookup(fid).function;
        std::set<int> base;
        std::vector<std::uint64_t> differs;
        std::set<int> superset;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            DetectionConfig cfg;
            cfg.rng_seed = seed;
            const auto r = run_detection(f, cfg);
            std::set<int> sites;
            for (const BugRecord& b : r.bugs) sites.insert(b.site.op_index);
            superset.insert(sites.begin(), sites.end());
            if (seed == 0) {
                base = sites;
            } else if (sites != base) {
                differs.push_back(seed);
            }
            for (int d : documented.at(fid)) documented_present &= sites.count(d) > 0;
        }
        std::cout << "  " << fid << ": seed-0 sites " << set_text(base);
        if (differs.empty()) {
            std::cout << ", identical across all 20 seeds\n";
        } else {
            identical = false;
            std::cout << ", differs (union " << set_text(superset) << ") at seeds";
            for (auto s : differs) std::cout << ' ' << s;
            std::cout << '\n';
            if (!flicker_text.empty()) flicker_text += "; ";
            flicker_text += std::string(fid) + " flickers across " +
                            std::to_string(differs.size()) + " of 20 seeds";
        }
    }
    std::cout << "  documented bug sites present in all 100 runs: "
              << (documented_present ? "yes" : "NO") << '\n';
    if (!identical) {
        std::cout << "  cause: exp(x)-1-x loses every significant bit for |x| < ~1e-7, so the\n"
                     "  second subtraction confirms only when a seed's Newton path happens to\n"
                     "  land that close to 0; the basin covers a minority of seed points, so\n"
                     "  the extra site comes and goes with the seed.\n";
    }
    detail = identical ? "confirmed site sets stable across seeds 0..19 for f1..f5"
                       : flicker_text + " (documented sites "
                         + (documented_present ? "do" : "do NOT") + " persist)";
    return identical;
}

// --- C9: core numeric invariants ---------------------------------------------

bool criterion9(std::string& detail) {
    Crit c;

    // Tracing is replayable and bit-identical to plain evaluation.
    const std::map<std::string, std::vector<double>> benign{
        {"f1", {0.7}}, {"f2", {0.7}}, {"f3", {0.7}}, {"f4", {0.7}},
        {"f5", {0.7}}, {"f6", {0.7, 0.3}}, {"f7", {0.7, 0.3}}, {"f8", {0.7}}};
    for (const auto& [fid, in] : benign) {
        const auto& f = lookup(fid).function;
        const auto t1 = evaluate_traced(f, in);
        const auto t2 = evaluate_traced(f, in);
        bool same = same_bits(t1.final_result, t2.final_result) &&
                    same_bits(t1.final_result, evaluate_plain(f, in)) &&
                    t1.records.size() == t2.records.size();
        for (std::size_t i = 0; same && i < t1.records.size(); ++i) {
            same = same_bits(t1.records[i].result, t2.records[i].result);
        }
        c.require(same, fid + " trace replay differs");

        // Zero-magnitude injection at every site leaves the result untouched.
        for (std::size_t i = 0; i < f.site_ops.size(); ++i) {
            const SiteId site{fid, static_cast<std::int32_t>(i)};
            c.require(same_bits(evaluate_perturbed(f, in, site, 0.0), t1.final_result),
                      fid + " site " + std::to_string(i) + " moves under zero perturbation");
        }
    }

    // Per-op condition numbers match their closed forms at a benign point.
    const double x = 0.7;
    const auto t1 = evaluate_traced(lookup("f1").function, std::vector<double>{x});
    const double sin_want = std::fabs(x * std::cos(x) / std::sin(x));
    c.require(std::fabs(condition_number(t1.records[0]) - sin_want) < 1e-12 * sin_want,
              "sin condition number off");
    const auto t2 = evaluate_traced(lookup("f2").function, std::vector<double>{x});
    const double cos_want = std::fabs(x * std::tan(x));
    c.require(std::fabs(condition_number(t2.records[0]) - cos_want) < 1e-12 * cos_want,
              "cos condition number off");
    const auto t3 = evaluate_traced(lookup("f3").function, std::vector<double>{x});
    c.require(std::fabs(condition_number(t3.records[0]) - x) < 1e-12 * x,
              "exp condition number off");
    const auto t4 = evaluate_traced(lookup("f4").function, std::vector<double>{x});
    const double log_want = std::fabs(1.0 / std::log(x));
    c.require(std::fabs(condition_number(t4.records[0]) - log_want) < 1e-12 * log_want,
              "log condition number off");

    // Newton converges quadratically on x^2 - 2 and lands on sqrt(2) exactly.
    const double root = std::sqrt(2.0);
    const auto out = newton_solve([](double v) { return v * v - 2.0; }, 2.0, {});
    c.require(out.status == SolveStatus::ConvergedResidual && same_bits(out.root[0], root),
              "x^2-2 did not converge to sqrt(2) bits");
    for (std::size_t k = 0; k + 1 < out.path.size(); ++k) {
        const double e0 = std::fabs(out.path[k].first[0] - root);
        const double e1 = std::fabs(out.path[k + 1].first[0] - root);
        if (e0 >= 1e-7) {
            c.require(e1 <= 0.6 * e0 * e0, "quadratic convergence ratio violated");
        }
    }

    // Doubling the oracle precision does not change any reported error.
    const auto r = run_detection(lookup("f1").function, {});
    c.require(!r.bugs.empty(), "no f1 bugs to cross-check");
    for (const BugRecord& b : r.bugs) {
        const double e256 = oracle_relative_error(lookup("f1").function, b.witness, {256});
        const double e512 = oracle_relative_error(lookup("f1").function, b.witness, {512});
        const bool agree =
            (std::isnan(e256) && std::isnan(e512)) ||
            (std::isinf(e256) && std::isinf(e512) && (e256 > 0) == (e512 > 0)) ||
            (e256 == e512) ||
            (std::fabs(e256 - e512) < 1e-9 * std::max(std::fabs(e256), std::fabs(e512)));
        c.require(agree, "oracle error changes between 256 and 512 bits");
    }

    detail = c.ok ? "replay, zero-injection, condition closed forms, quadratic convergence, "
                    "and oracle precision stability all hold"
                  : c.fails;
    return c.ok;
}

using CriterionFn = bool (*)(std::string&);

constexpr std::array<std::pair<int, CriterionFn>, 9> kCriteria{{
    {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
    {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
}};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 9) {
            std::cerr << "usage: " << argv[0] << " [criterion 1..9]\n";
            return 1;
        }
        which.push_back(n);
    } else {
        for (const auto& [n, fn] : kCriteria) which.push_back(n);
    }

    bool all_ok = true;
    for (int n : which) {
        std::string detail;
        bool ok = false;
        try {
            ok = kCriteria[static_cast<std::size_t>(n - 1)].second(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << 'C' << n << (ok ? " PASS — " : " FAIL — ") << detail << '\n';
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
