#pragma once

// Lemma-verification driver behind `permubench verify`: runs each oracle at
// its documented sizes and reports claim, computed value, bound and margin.

#include <cmath>
#include <string>
#include <vector>

#include "permubench/oracles.hpp"

namespace permubench {

struct LemmaCheck {
    std::string lemma;
    std::string claim;
    double value = 0;
    double bound = 0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

namespace detail {

inline std::vector<CycleType> all_cycle_types(std::size_t n) {
    std::vector<CycleType> out;
    for (const auto& part : partitions(n)) {
        CycleType ct;
        for (auto p : part) {
            if (p >= 2) ct.lengths.push_back(p);
            else ++ct.fixed_points;
        }
        out.push_back(ct);
    }
    return out;
}

}  // namespace detail

// Exact same-cycle probability equals brute-force enumeration and respects
// the (n-r)(n-r+1)/(n(n-1)) bound, exhaustively over cycle types for n <= 7.
inline std::vector<LemmaCheck> verify_same_cycle_split() {
    std::vector<LemmaCheck> out;
    bool all_equal = true, all_bounded = true;
    double worst_margin = 1;
    for (std::size_t n = 2; n <= 7; ++n) {
        for (const auto& ct : detail::all_cycle_types(n)) {
            const auto res = same_cycle_probability_exact(ct);
            const auto brute = same_cycle_probability_bruteforce(ct.representative());
            if (!(res.exact == brute)) all_equal = false;
            if (!(res.exact <= res.bound)) all_bounded = false;
            worst_margin = std::min(worst_margin, res.bound.to_double() - res.exact.to_double());
        }
    }
    out.push_back({"same-cycle-split",
                   "exact probability equals transposition enumeration for all cycle types, n<=7",
                   all_equal ? 1.0 : 0.0, 1.0, all_equal, false, ""});
    out.push_back({"same-cycle-split",
                   "exact probability <= (n-r)(n-r+1)/(n(n-1)) for all cycle types, n<=7",
                   worst_margin, 0.0, all_bounded, false, "value = worst bound margin"});
    return out;
}

// Improvement probability on the leading-ones lift is at most 6/(n-1)^2.
inline std::vector<LemmaCheck> verify_leadingones_improvement(std::uint64_t seed,
                                                              std::size_t samples) {
    std::vector<LemmaCheck> out;
    if (samples == 0) {
        out.push_back({"leadingones-improvement", "skipped: zero sample budget", 0, 0, false,
                       true, "increase --samples"});
        return out;
    }
    const MutationConfig mcfg = MutationConfig::swap_poisson();
    RandomStream rng(derive_seed(seed, 101));
    for (std::size_t n : {5, 10, 20}) {
        const BenchmarkSpec spec = BenchmarkSpec::pleadingones(n);
        const double bound = 6.0 / ((n - 1.0) * (n - 1.0));
        double worst = 0;
        for (int s = 0; s < 10; ++s) {
            Permutation sigma = random_permutation_uniform(n, rng);
            while (sigma.is_identity()) sigma = random_permutation_uniform(n, rng);
            const auto est = improvement_probability_estimate(spec, sigma, mcfg, samples, rng);
            worst = std::max(worst, est.value + 3 * est.standard_error);
        }
        out.push_back({"leadingones-improvement",
                       "improvement probability + 3SE <= 6/(n-1)^2 at n=" + std::to_string(n),
                       worst, bound, worst <= bound, false, "worst of 10 random states"});
    }
    return out;
}

// One EA iteration from a PJump local optimum changes the cycle count with
// probability at most 3(m/(n-1))^2.
inline std::vector<LemmaCheck> verify_cycle_change(std::uint64_t seed, std::size_t samples) {
    std::vector<LemmaCheck> out;
    if (samples == 0) {
        out.push_back({"cycle-change", "skipped: zero sample budget", 0, 0, false, true,
                       "increase --samples"});
        return out;
    }
    const MutationConfig mcfg = MutationConfig::swap_poisson();
    RandomStream rng(derive_seed(seed, 202));
    const std::pair<std::size_t, std::size_t> cases[] = {{20, 3}, {20, 4}, {40, 3}};
    for (const auto& [n, m] : cases) {
        const double bound =
            3.0 * (static_cast<double>(m) / (n - 1.0)) * (static_cast<double>(m) / (n - 1.0));
        double worst = 0;
        for (int s = 0; s < 10; ++s) {
            const Permutation sigma = sample_a2plus(n, m, rng);
            const auto est = cycle_change_probability_estimate(sigma, m, mcfg, samples, rng);
            worst = std::max(worst, est.value + 3 * est.standard_error);
        }
        out.push_back({"cycle-change",
                       "cycle-change probability + 3SE <= 3(m/(n-1))^2 at n=" +
                           std::to_string(n) + ", m=" + std::to_string(m),
                       worst, bound, worst <= bound, false, "worst of 10 A2Plus states"});
    }
    return out;
}

// Every A2Plus state is within floor(m/2) transpositions of a good one.
inline std::vector<LemmaCheck> verify_good_distance() {
    std::vector<LemmaCheck> out;
    for (std::size_t n = 3; n <= 7; ++n) {
        for (std::size_t m : {3, 4, 5}) {
            if (m > n) continue;
            std::size_t worst = 0, checked = 0;
            for (const auto& sigma : detail::all_permutations(n)) {
                if (classify_region(sigma, m) != RegionLabel::A2Plus) continue;
                worst = std::max(worst, good_distance_bfs(sigma, m));
                ++checked;
            }
            const std::size_t bound = m / 2;
            out.push_back({"good-distance",
                           "BFS distance to a good permutation <= floor(m/2), n=" +
                               std::to_string(n) + ", m=" + std::to_string(m),
                           static_cast<double>(worst), static_cast<double>(bound),
                           worst <= bound, false,
                           std::to_string(checked) + " plateau states, exhaustive"});
        }
    }
    return out;
}

// The scramble one-step jump probability: exact sum vs Monte Carlo, and
// equality across plateau cycle types.
inline std::vector<LemmaCheck> verify_scramble_jump(std::uint64_t seed, std::size_t samples) {
    std::vector<LemmaCheck> out;
    const MutationConfig mcfg = MutationConfig::scramble_poisson();

    const auto exact53 = one_step_jump_probability_exact(5, 3, mcfg);
    const double p = exact53.begin()->second;
    const double k3_term = 1.0 / (360.0 * std::exp(1.0));
    out.push_back({"scramble-jump",
                   "exact one-step probability at n=5, m=3 is at least its k=3 term 1/(360e)",
                   p, k3_term, p >= k3_term && p < 1.5 * k3_term, false,
                   "full sum adds only the k=4,5 tails"});

    double spread = 0;
    for (std::size_t n : {6, 7}) {
        const auto map = one_step_jump_probability_exact(n, 4, mcfg);
        double lo = 1, hi = 0;
        for (const auto& [ct, v] : map) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        spread = std::max(spread, hi - lo);
    }
    out.push_back({"scramble-jump",
                   "exact value identical across all A2Plus cycle types (n=6,7; m=4)", spread,
                   1e-15, spread <= 1e-15, false, "value = max spread across types"});

    if (samples == 0) {
        out.push_back({"scramble-jump", "skipped Monte-Carlo cross-check: zero sample budget",
                       0, 0, false, true, "increase --samples"});
        return out;
    }
    RandomStream rng(derive_seed(seed, 303));
    const Permutation sigma = sample_a2plus(5, 3, rng);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s)
        if (scramble_mutate(sigma, mcfg.counts, rng).is_identity()) ++hits;
    const double est = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(est * (1 - est) / static_cast<double>(samples));
    out.push_back({"scramble-jump",
                   "Monte-Carlo estimate within 3SE of the exact sum (n=5, m=3)",
                   est, p, std::abs(est - p) <= 3 * se + 1e-12, false,
                   "SE=" + std::to_string(se)});
    return out;
}

inline std::vector<LemmaCheck> verify_lemmas(const std::vector<std::string>& selection,
                                             std::uint64_t seed, std::size_t samples) {
    auto wanted = [&](const std::string& name) {
        return selection.empty() ||
               std::find(selection.begin(), selection.end(), name) != selection.end();
    };
    std::vector<LemmaCheck> out;
    auto append = [&](std::vector<LemmaCheck> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    if (wanted("same-cycle-split")) append(verify_same_cycle_split());
    if (wanted("leadingones-improvement")) append(verify_leadingones_improvement(seed, samples));
    if (wanted("cycle-change")) append(verify_cycle_change(seed, samples));
    if (wanted("good-distance")) append(verify_good_distance());
    if (wanted("scramble-jump")) append(verify_scramble_jump(seed, samples));
    return out;
}

}  // namespace permubench
