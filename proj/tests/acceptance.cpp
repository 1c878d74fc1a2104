// Acceptance suite: one line of output per criterion, exit nonzero on any
// failure. Every numeric window is fixed here, not configurable, so a green
// run certifies the whole library end to end.

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "permubench/permubench.hpp"

using namespace permubench;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %02d %s — %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// -- 1 -----------------------------------------------------------------------
void criterion_same_cycle() {
    bool equal = true, bounded = true;
    std::size_t types = 0;
    for (std::size_t n = 2; n <= 7; ++n) {
        for (const auto& part : detail::partitions(n)) {
            CycleType ct;
            for (auto p : part) {
                if (p >= 2) ct.lengths.push_back(p);
                else ++ct.fixed_points;
            }
            ++types;
            const auto r = same_cycle_probability_exact(ct);
            if (!(r.exact == same_cycle_probability_bruteforce(ct.representative())))
                equal = false;
            if (!(r.exact <= r.bound)) bounded = false;
        }
    }
    report(1, "same-cycle probability exact vs enumeration, all cycle types n<=7",
           equal && bounded,
           std::to_string(types) + " types, exact equality and bound both hold");
}

// -- 2 -----------------------------------------------------------------------
void criterion_leadingones_improvement() {
    const std::size_t samples = 1000000;
    const MutationConfig cfg = MutationConfig::swap_poisson(1.0);
    RandomStream rng(20250823);
    bool ok = true;
    double worst_ratio = 0;
    for (std::size_t n : {5, 10, 20}) {
        const auto spec = BenchmarkSpec::pleadingones(n);
        const double bound = 6.0 / ((n - 1.0) * (n - 1.0));
        for (int s = 0; s < 10; ++s) {
            Permutation sigma = random_permutation_uniform(n, rng);
            while (sigma.is_identity()) sigma = random_permutation_uniform(n, rng);
            const auto est = improvement_probability_estimate(spec, sigma, cfg, samples, rng);
            const double v = est.value + 3 * est.standard_error;
            worst_ratio = std::max(worst_ratio, v / bound);
            if (v > bound) ok = false;
        }
    }
    report(2, "leading-ones improvement probability <= 6/(n-1)^2", ok,
           "n in {5,10,20}, 10 states each, 1e6 samples; worst (value+3SE)/bound = " +
               fmt(worst_ratio));
}

// -- 3 -----------------------------------------------------------------------
void criterion_cycle_change() {
    const std::size_t samples = 1000000;
    const MutationConfig cfg = MutationConfig::swap_poisson(1.0);
    RandomStream rng(77001);
    bool ok = true;
    double worst_ratio = 0;
    const std::pair<std::size_t, std::size_t> cases[] = {{20, 3}, {20, 4}, {40, 3}};
    for (const auto& [n, m] : cases) {
        const double bound =
            3.0 * (static_cast<double>(m) / (n - 1.0)) * (static_cast<double>(m) / (n - 1.0));
        for (int s = 0; s < 10; ++s) {
            const auto sigma = sample_a2plus(n, m, rng);
            const auto est = cycle_change_probability_estimate(sigma, m, cfg, samples, rng);
            const double v = est.value + 3 * est.standard_error;
            worst_ratio = std::max(worst_ratio, v / bound);
            if (v > bound) ok = false;
        }
    }
    report(3, "plateau cycle-change probability <= 3(m/(n-1))^2", ok,
           "(n,m) in {(20,3),(20,4),(40,3)}, 10 states each, 1e6 samples; worst ratio = " +
               fmt(worst_ratio));
}

// -- 4 -----------------------------------------------------------------------
void criterion_good_distance() {
    bool ok = true;
    std::size_t states = 0;
    for (std::size_t n = 3; n <= 7; ++n) {
        for (std::size_t m : {3, 4, 5}) {
            if (m > n) continue;
            for (const auto& sigma : detail::all_permutations(n)) {
                if (classify_region(sigma, m) != RegionLabel::A2Plus) continue;
                ++states;
                if (good_distance_bfs(sigma, m) > m / 2) ok = false;
            }
        }
    }
    report(4, "every plateau state within floor(m/2) transpositions of a good one", ok,
           std::to_string(states) + " states checked exhaustively, n<=7, m in {3,4,5}");
}

// -- 5 -----------------------------------------------------------------------
void criterion_hitting_time() {
    const std::size_t runs = 10000;
    bool ok = true;
    std::string detail_s;
    struct Case {
        BenchmarkSpec spec;
        const char* name;
    };
    const Case cases[] = {{BenchmarkSpec::pjump(4, 3), "pjump(4,3)"},
                          {BenchmarkSpec::pham(5), "pham(5)"}};
    const auto cfg = MutationConfig::swap_poisson(1.0);
    for (const auto& c : cases) {
        const double exact = ea_hitting_time_exact(c.spec, cfg, StartSpec::uniform());
        const auto batch = run_batch(c.spec, cfg, 1u << 24, runs, 314159);
        const double dev = std::abs(batch.mean_iterations - exact);
        const bool pass = batch.success_rate == 1.0 && dev <= 3 * batch.standard_error;
        if (!pass) ok = false;
        detail_s += std::string(c.name) + ": exact=" + fmt(exact) +
                    " empirical=" + fmt(batch.mean_iterations) +
                    " |dev|/SE=" + fmt(dev / batch.standard_error) + "  ";
    }
    report(5, "exact absorbing-chain hitting time within 3 SE of 1e4-run means", ok, detail_s);
}

// -- 6 -----------------------------------------------------------------------
void criterion_scramble_jump() {
    const auto cfg = MutationConfig::scramble_poisson(1.0);
    const auto exact = one_step_jump_probability_exact(5, 3, cfg);
    const double p = exact.begin()->second;
    const double k3 = 1.0 / (360.0 * std::exp(1.0));

    RandomStream rng(60660);
    const auto sigma = sample_a2plus(5, 3, rng);
    const std::size_t samples = 10000000;
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s)
        if (scramble_mutate(sigma, cfg.counts, rng).is_identity()) ++hits;
    const double est = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(est * (1 - est) / static_cast<double>(samples));

    double spread = 0;
    for (std::size_t n : {6, 7}) {
        const auto map = one_step_jump_probability_exact(n, 4, cfg);
        double lo = 1, hi = 0;
        for (const auto& [t, v] : map) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        spread = std::max(spread, hi - lo);
    }

    const bool ok = p > k3 && std::abs(est - p) <= 3 * se && spread <= 1e-15;
    report(6, "scramble one-step jump probability: exact sum vs 1e7-sample Monte Carlo", ok,
           "exact=" + fmt(p) + " (k=3 term 1/(360e)=" + fmt(k3) + "), MC=" + fmt(est) +
               ", |dev|/SE=" + fmt(std::abs(est - p) / se) +
               ", cross-type spread=" + fmt(spread));
}

// -- 7 -----------------------------------------------------------------------
void criterion_leadingones_scaling() {
    SweepPlan plan;
    plan.kind = BenchmarkSpec::Kind::PLeadingOnes;
    plan.n_values = {16, 24, 32, 48, 64};
    plan.mutations = {MutationConfig::swap_poisson(1.0)};
    plan.runs_per_cell = 200;
    plan.master_seed = 700700;
    const auto cells = sweep(plan);
    bool all_success = true;
    std::vector<FitPoint> points;
    for (const auto& c : cells) {
        if (c.summary.success_rate < 1.0) all_success = false;
        points.push_back({c.spec.n, c.summary.mean_iterations, c.summary.success_rate});
    }
    const auto fit = fit_exponent(points);
    const bool ok = all_success && fit.exponent >= 2.6 && fit.exponent <= 3.4;
    report(7, "leading-ones runtime scales as a cubic power law", ok,
           "n in {16..64}, 200 runs/cell, fitted exponent = " + fmt(fit.exponent) +
               " (window [2.6, 3.4]), all cells solved");
}

// -- 8 -----------------------------------------------------------------------
void criterion_ham_scaling() {
    SweepPlan plan;
    plan.kind = BenchmarkSpec::Kind::PHam;
    plan.n_values = {16, 32, 64, 128};
    plan.mutations = {MutationConfig::swap_poisson(1.0)};
    plan.runs_per_cell = 200;
    plan.master_seed = 800800;
    const auto cells = sweep(plan);
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    bool all_success = true;
    for (const auto& c : cells) {
        if (c.summary.success_rate < 1.0) all_success = false;
        const double n = static_cast<double>(c.spec.n);
        const double ratio = c.summary.mean_iterations / (n * n * std::log(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    const bool ok = all_success && hi / lo <= 2.5;
    report(8, "sorting-time means track n^2 ln n within a constant factor", ok,
           "n in {16..128}, 200 runs/cell, max/min of mean/(n^2 ln n) = " + fmt(hi / lo) +
               " (limit 2.5)");
}

// -- 9 -----------------------------------------------------------------------
void criterion_jump_operator_separation() {
    SweepPlan plan;
    plan.kind = BenchmarkSpec::Kind::PJump;
    plan.m = 3;
    plan.n_values = {8, 10, 12, 14, 16};
    plan.mutations = {MutationConfig::swap_poisson(1.0), MutationConfig::scramble_poisson(1.0)};
    plan.runs_per_cell = 300;
    plan.master_seed = 900900;
    plan.start = StartPolicy::UniformA2Plus;
    const auto cells = sweep(plan);
    const auto groups = group_cells(cells);

    double swap_exp = 0, scr_exp = 0;
    for (const auto& [key, points] : groups) {
        const auto fit = fit_exponent(points);
        if (key.op == "swap") swap_exp = fit.exponent;
        else scr_exp = fit.exponent;
    }

    // Direct mean comparison past the constant-factor crossover: the exact
    // one-step oracle puts swap/scramble escape means at ~0.036 n apart, so
    // scramble only wins outright for n above ~27; compare at n=40.
    const auto spec40 = BenchmarkSpec::pjump(40, 3);
    const auto swap40 = run_batch(spec40, plan.mutations[0],
                                  default_budget(spec40, plan.mutations[0]), 300, 909040,
                                  StartPolicy::UniformA2Plus);
    const auto scr40 = run_batch(spec40, plan.mutations[1],
                                 default_budget(spec40, plan.mutations[1]), 300, 909041,
                                 StartPolicy::UniformA2Plus);

    const bool ok = swap_exp >= 3.5 && swap_exp <= 4.5 && scr_exp >= 2.5 && scr_exp <= 3.5 &&
                    swap40.success_rate == 1.0 && scr40.success_rate == 1.0 &&
                    scr40.mean_iterations < swap40.mean_iterations;
    report(9, "jump plateau escape: swap ~ n^4 vs scramble ~ n^3, scramble faster at n=40", ok,
           "swap exponent = " + fmt(swap_exp) + " (window [3.5, 4.5]), scramble exponent = " +
               fmt(scr_exp) + " (window [2.5, 3.5]), means at n=40: " +
               fmt(scr40.mean_iterations) + " < " + fmt(swap40.mean_iterations));
}

// -- 10 ----------------------------------------------------------------------
void criterion_heavy_tail_speedup() {
    const auto spec = BenchmarkSpec::pjump(12, 4);
    const std::size_t runs = 300;
    const auto poisson = MutationConfig::scramble_poisson(1.0);
    const auto heavy = MutationConfig::scramble_power_law(1.5, 12);
    const auto pb = run_batch(spec, poisson, default_budget(spec, poisson), runs, 1010,
                              StartPolicy::UniformA2Plus);
    const auto hb = run_batch(spec, heavy, default_budget(spec, heavy), runs, 1011,
                              StartPolicy::UniformA2Plus);
    const bool ok = pb.success_rate == 1.0 && hb.success_rate == 1.0 &&
                    hb.mean_iterations <= pb.mean_iterations / 1.5;
    report(10, "heavy-tailed scramble beats Poisson scramble by at least 1.5x", ok,
           "pjump(12,4) from the plateau, 300 runs: Poisson mean = " + fmt(pb.mean_iterations) +
               ", power-law(1.5) mean = " + fmt(hb.mean_iterations) + ", speed-up = " +
               fmt(pb.mean_iterations / hb.mean_iterations));
}

// -- 11 ----------------------------------------------------------------------
void criterion_sampler_fidelity() {
    const std::size_t N = 1000000;
    RandomStream rng(111111);
    bool ok = true;
    std::string note;

    std::vector<std::size_t> hist(32, 0);
    double m2 = 0, m3 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t k = poisson_sample(1.0, rng);
        if (k < hist.size()) ++hist[k];
        const auto kd = static_cast<double>(k);
        m2 += kd * kd;
        m3 += kd * kd * kd;
    }
    double fact = 1;
    for (std::size_t k = 0; k <= 8; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        const double p = std::exp(-1.0) / fact;
        const double se = std::sqrt(p * (1 - p) * static_cast<double>(N));
        if (std::abs(static_cast<double>(hist[k]) - p * static_cast<double>(N)) > 3 * se) {
            ok = false;
            note += "pmf bin " + std::to_string(k) + " off; ";
        }
    }
    m2 /= static_cast<double>(N);
    m3 /= static_cast<double>(N);
    if (std::abs(m2 - 2.0) > 0.01 * 2.0) {
        ok = false;
        note += "2nd moment " + fmt(m2) + "; ";
    }
    if (std::abs(m3 - 5.0) > 0.02 * 5.0) {
        ok = false;
        note += "3rd moment " + fmt(m3) + "; ";
    }

    std::vector<std::size_t> ph(101, 0);
    for (std::size_t i = 0; i < N; ++i) ++ph[power_law_sample(1.5, 100, rng)];
    double norm = 0;
    for (int i = 1; i <= 100; ++i) norm += std::pow(i, -1.5);
    double tv = 0;
    for (int i = 1; i <= 100; ++i)
        tv += std::abs(static_cast<double>(ph[static_cast<std::size_t>(i)]) /
                           static_cast<double>(N) -
                       std::pow(i, -1.5) / norm);
    tv /= 2;
    if (tv >= 0.005) {
        ok = false;
        note += "power-law TV " + fmt(tv) + "; ";
    }

    report(11, "count samplers match their laws (pmf bins, moments, TV distance)", ok,
           note.empty() ? "Poisson(1) bins k<=8 within 3 SE, moments " + fmt(m2) + "/" +
                              fmt(m3) + ", power-law TV = " + fmt(tv)
                        : note);
}

// -- 12 ----------------------------------------------------------------------
void criterion_structural_invariants() {
    bool ok = true;
    std::string note;
    RandomStream rng(121212);

    // bijectivity: the Permutation constructor validates every offspring
    const auto parent = random_permutation_uniform(10, rng);
    try {
        for (std::size_t i = 0; i < 1000000; ++i)
            (void)swap_mutate(parent, CountDistribution::poisson(1.0), false, rng);
        for (std::size_t i = 0; i < 1000000; ++i)
            (void)scramble_mutate(parent, CountDistribution::poisson(1.0), rng);
    } catch (const std::exception& e) {
        ok = false;
        note += std::string("mutation validity: ") + e.what() + "; ";
    }

    // cycle decomposition round trip and fixed-point census, exhaustive n<=7
    for (std::size_t n = 1; n <= 7 && ok; ++n) {
        for (const auto& p : detail::all_permutations(n)) {
            if (rebuild(cycle_decomposition(p)) != p) {
                ok = false;
                note += "round trip failed at n=" + std::to_string(n) + "; ";
                break;
            }
            if (n >= 2 && fixed_point_count(p) == n - 1) {
                ok = false;
                note += "impossible fixed-point count n-1 at n=" + std::to_string(n) + "; ";
                break;
            }
        }
    }

    // elitism: fitness along every recorded trajectory is strictly increasing
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto rec = run_once(BenchmarkSpec::pjump(8, 3),
                                  seed % 2 ? MutationConfig::swap_poisson(1.0)
                                           : MutationConfig::scramble_poisson(1.0),
                                  1u << 20, seed);
        for (std::size_t i = 1; i < rec.trajectory.size(); ++i)
            if (rec.trajectory[i].second <= rec.trajectory[i - 1].second) {
                ok = false;
                note += "non-monotone trajectory at seed " + std::to_string(seed) + "; ";
            }
    }

    report(12, "structural invariants: bijectivity, cycle round trip, elitism", ok,
           note.empty() ? "2e6 mutation calls validated, exhaustive n<=7 checks, 200 "
                          "trajectories monotone"
                        : note);
}

// -- 13 ----------------------------------------------------------------------
void criterion_determinism() {
    SweepPlan plan;
    plan.kind = BenchmarkSpec::Kind::PJump;
    plan.m = 3;
    plan.n_values = {6, 8};
    plan.mutations = {MutationConfig::swap_poisson(1.0), MutationConfig::scramble_poisson(1.0)};
    plan.runs_per_cell = 25;
    plan.master_seed = 131313;

    auto render = [](const SweepPlan& p) {
        const auto cells = sweep(p);
        std::ostringstream os;
        write_runs_csv(os, cells, /*suppress_timestamp=*/true);
        write_summary_csv(os, cells, true);
        return os.str();
    };
    const std::string first = render(plan);
    const std::string second = render(plan);
    auto threaded = plan;
    threaded.threads = 4;
    const std::string third = render(threaded);

    const bool ok = first == second && first == third && !first.empty();
    report(13, "sweeps are byte-identical across repeats and thread counts", ok,
           std::to_string(first.size()) + " bytes of CSV compared across 3 executions");
}

}  // namespace

int main() {
    criterion_same_cycle();
    criterion_leadingones_improvement();
    criterion_cycle_change();
    criterion_good_distance();
    criterion_hitting_time();
    criterion_scramble_jump();
    criterion_leadingones_scaling();
    criterion_ham_scaling();
    criterion_jump_operator_separation();
    criterion_heavy_tail_speedup();
    criterion_sampler_fidelity();
    criterion_structural_invariants();
    criterion_determinism();

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
