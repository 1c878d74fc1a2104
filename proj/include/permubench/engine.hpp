#pragma once

// The elitist (1+1) EA loop: mutate, evaluate, accept on >=, repeat until the
// optimum or the budget is hit. Instruments region transitions and
// cycle-structure events on the PJump plateau. Batches pre-derive per-run
// seeds so results do not depend on scheduling.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "permubench/benchmark.hpp"
#include "permubench/mutation.hpp"
#include "permubench/permutation.hpp"
#include "permubench/random.hpp"

namespace permubench {

enum class StartPolicy { UniformRandom, Identity, Explicit, UniformA2Plus, UniformGood };

inline const char* to_string(StartPolicy p) {
    switch (p) {
        case StartPolicy::UniformRandom: return "uniform";
        case StartPolicy::Identity: return "identity";
        case StartPolicy::Explicit: return "explicit";
        case StartPolicy::UniformA2Plus: return "a2plus";
        case StartPolicy::UniformGood: return "good";
    }
    return "?";
}

struct RunRecord {
    std::uint64_t iterations = 0;
    bool success = false;
    std::uint64_t seed = 0;
    long final_fitness = 0;
    // first-entry iteration per region (A1, A2Interior, A2Plus, A3); -1 = never
    std::array<std::int64_t, 4> region_entry{-1, -1, -1, -1};
    // accepted steps that changed the total cycle count while in A2Plus
    std::uint64_t cycle_change_events = 0;
    // (iteration, fitness) at fitness-improvement events
    std::vector<std::pair<std::uint64_t, long>> trajectory;
};

struct BatchSummary {
    std::size_t run_count = 0;
    double mean_iterations = 0;  // over successful runs
    double standard_error = 0;
    double success_rate = 0;
    std::vector<RunRecord> records;
};

// Uniform over the PJump plateau: a uniform m-subset deranged uniformly.
inline Permutation sample_a2plus(std::size_t n, std::size_t m, RandomStream& rng) {
    check_jump_m(n, m);
    for (;;) {
        const auto subset = random_k_subset(n, m, rng);
        const Permutation sigma = subset_shuffle(Permutation::identity(n), subset, rng);
        if (fixed_point_count(sigma) == n - m) return sigma;
    }
}

inline Permutation sample_good_local_optimum(std::size_t n, std::size_t m, RandomStream& rng) {
    for (;;) {
        const Permutation sigma = sample_a2plus(n, m, rng);
        if (is_good_local_optimum(sigma, m)) return sigma;
    }
}

namespace detail {

inline long optimum_fitness(const BenchmarkSpec& spec) {
    switch (spec.kind) {
        case BenchmarkSpec::Kind::PHam:
        case BenchmarkSpec::Kind::PLeadingOnes:
            return static_cast<long>(spec.n);
        case BenchmarkSpec::Kind::PJump:
            return static_cast<long>(spec.n + spec.m);
        case BenchmarkSpec::Kind::Lifted: {
            if (!spec.lifted_identity_optimal)
                throw std::invalid_argument("engine: lifted spec needs a declared optimum");
            return spec.lifted_fn(std::vector<bool>(spec.n, true));
        }
    }
    throw std::logic_error("optimum_fitness: bad kind");
}

inline RegionLabel region_from_g(std::size_t g, std::size_t n, std::size_t m) {
    if (g == n) return RegionLabel::A3;
    if (g == n - m) return RegionLabel::A2Plus;
    if (g < n - m) return RegionLabel::A2Interior;
    return RegionLabel::A1;
}

// fitness from an already-known fixed-point count, word only needed for PLO/Lifted
inline long fitness_from_state(const BenchmarkSpec& spec, const std::vector<label_t>& word,
                               std::size_t g) {
    switch (spec.kind) {
        case BenchmarkSpec::Kind::PHam:
            return static_cast<long>(g);
        case BenchmarkSpec::Kind::PJump: {
            const auto n = static_cast<long>(spec.n);
            const auto m = static_cast<long>(spec.m);
            const auto gl = static_cast<long>(g);
            return (gl <= n - m || gl == n) ? m + gl : n - gl;
        }
        case BenchmarkSpec::Kind::PLeadingOnes: {
            std::size_t lo = 0;
            while (lo < word.size() && word[lo] == static_cast<label_t>(lo)) ++lo;
            return static_cast<long>(lo);
        }
        case BenchmarkSpec::Kind::Lifted: {
            std::vector<bool> bits(word.size());
            for (std::size_t i = 0; i < word.size(); ++i)
                bits[i] = word[i] == static_cast<label_t>(i);
            return spec.lifted_fn(bits);
        }
    }
    throw std::logic_error("fitness_from_state: bad kind");
}

inline std::size_t cycle_count_of_word(const std::vector<label_t>& word) {
    std::vector<char> visited(word.size(), 0);
    std::size_t count = 0;
    for (std::size_t s = 0; s < word.size(); ++s) {
        if (visited[s]) continue;
        ++count;
        std::size_t cur = s;
        while (!visited[cur]) {
            visited[cur] = 1;
            cur = static_cast<std::size_t>(word[cur]);
        }
    }
    return count;
}

}  // namespace detail

inline RunRecord run_once(const BenchmarkSpec& spec, const MutationConfig& mcfg,
                          std::uint64_t budget, std::uint64_t seed,
                          StartPolicy start_policy = StartPolicy::UniformRandom,
                          const std::optional<Permutation>& start = std::nullopt) {
    const std::size_t n = spec.n;
    if (n < 1) throw std::invalid_argument("run_once: empty spec");
    RandomStream rng(seed);

    Permutation sigma0 = Permutation::identity(n);
    switch (start_policy) {
        case StartPolicy::UniformRandom: sigma0 = random_permutation_uniform(n, rng); break;
        case StartPolicy::Identity: break;
        case StartPolicy::Explicit:
            if (!start || start->size() != n)
                throw std::invalid_argument("run_once: explicit start missing or wrong size");
            sigma0 = *start;
            break;
        case StartPolicy::UniformA2Plus: sigma0 = sample_a2plus(n, spec.m, rng); break;
        case StartPolicy::UniformGood: sigma0 = sample_good_local_optimum(n, spec.m, rng); break;
    }

    RunRecord rec;
    rec.seed = seed;

    std::vector<label_t> word = sigma0.word();
    std::vector<label_t> inv(n);
    for (std::size_t i = 0; i < n; ++i)
        inv[static_cast<std::size_t>(word[i])] = static_cast<label_t>(i);

    std::size_t g = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (word[i] == static_cast<label_t>(i)) ++g;

    long fitness = detail::fitness_from_state(spec, word, g);
    const long fstar = detail::optimum_fitness(spec);
    const bool track_regions = spec.kind == BenchmarkSpec::Kind::PJump;

    auto note_region = [&](std::size_t gg, std::uint64_t iter) {
        if (!track_regions) return;
        auto& slot = rec.region_entry[static_cast<std::size_t>(detail::region_from_g(gg, n, spec.m))];
        if (slot < 0) slot = static_cast<std::int64_t>(iter);
    };
    note_region(g, 0);
    rec.trajectory.emplace_back(0, fitness);

    std::vector<label_t> cand_word, cand_inv;
    std::vector<label_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<label_t> chosen, image, positions;

    std::uint64_t iter = 0;
    bool done = fitness == fstar && Permutation(word).is_identity();
    while (!done && iter < budget) {
        ++iter;

        std::size_t k = count_sample(mcfg.counts, rng);
        if (mcfg.op == MutationConfig::Operator::Swap && mcfg.plus_one) ++k;
        if (mcfg.op == MutationConfig::Operator::Scramble) {
            if (k > n) k = n;
            if (k < 2) continue;  // parent returned; accepted, nothing changes
        } else if (k == 0) {
            continue;
        }

        cand_word = word;
        cand_inv = inv;
        std::size_t cand_g = g;

        if (mcfg.op == MutationConfig::Operator::Swap) {
            for (std::size_t s = 0; s < k; ++s) {
                const auto a = static_cast<label_t>(rng.next_below(n));
                auto b = static_cast<label_t>(rng.next_below(n - 1));
                if (b >= a) ++b;
                const auto pa = static_cast<std::size_t>(cand_inv[static_cast<std::size_t>(a)]);
                const auto pb = static_cast<std::size_t>(cand_inv[static_cast<std::size_t>(b)]);
                cand_g -= (cand_word[pa] == static_cast<label_t>(pa));
                cand_g -= (cand_word[pb] == static_cast<label_t>(pb));
                std::swap(cand_word[pa], cand_word[pb]);
                cand_g += (cand_word[pa] == static_cast<label_t>(pa));
                cand_g += (cand_word[pb] == static_cast<label_t>(pb));
                cand_inv[static_cast<std::size_t>(a)] = static_cast<label_t>(pb);
                cand_inv[static_cast<std::size_t>(b)] = static_cast<label_t>(pa);
            }
        } else {
            // pick a uniform k-subset of labels (partial Fisher-Yates, undone after)
            chosen.clear();
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + rng.next_below(n - i);
                std::swap(pool[i], pool[j]);
                chosen.push_back(pool[i]);
            }
            std::sort(chosen.begin(), chosen.end());  // match subset_shuffle's set order
            image = chosen;
            for (std::size_t i = image.size() - 1; i > 0; --i) {
                const std::size_t j = rng.next_below(i + 1);
                std::swap(image[i], image[j]);
            }
            // read all source positions before any write: inv entries for the
            // chosen values are overwritten as the images are placed
            positions.clear();
            for (const label_t c : chosen)
                positions.push_back(cand_inv[static_cast<std::size_t>(c)]);
            for (std::size_t i = 0; i < chosen.size(); ++i) {
                const auto p = static_cast<std::size_t>(positions[i]);
                cand_g -= (cand_word[p] == static_cast<label_t>(p));
                cand_word[p] = image[i];
                cand_g += (cand_word[p] == static_cast<label_t>(p));
                cand_inv[static_cast<std::size_t>(image[i])] = static_cast<label_t>(p);
            }
            std::iota(pool.begin(), pool.end(), 0);
        }

        const long cand_fitness = detail::fitness_from_state(spec, cand_word, cand_g);
        if (cand_fitness < fitness) continue;  // rejected; elitism holds by construction

        const bool changed = cand_word != word;
        if (changed && track_regions &&
            detail::region_from_g(g, n, spec.m) == RegionLabel::A2Plus) {
            if (detail::cycle_count_of_word(word) != detail::cycle_count_of_word(cand_word))
                ++rec.cycle_change_events;
        }

        word.swap(cand_word);
        inv.swap(cand_inv);
        g = cand_g;
        if (cand_fitness > fitness) rec.trajectory.emplace_back(iter, cand_fitness);
        fitness = cand_fitness;
        note_region(g, iter);

        if (fitness == fstar && g == n) done = true;
    }

    rec.iterations = iter;
    rec.success = done;
    rec.final_fitness = fitness;
    return rec;
}

// Default budget: `multiplier` times the order of the expected runtime.
inline std::uint64_t default_budget(const BenchmarkSpec& spec, const MutationConfig& mcfg,
                                    double multiplier = 50.0) {
    const double n = static_cast<double>(spec.n);
    double order = 0;
    switch (spec.kind) {
        case BenchmarkSpec::Kind::PHam:
        case BenchmarkSpec::Kind::Lifted:
            order = std::exp(1.0) * n * n * std::max(1.0, std::log(n));
            break;
        case BenchmarkSpec::Kind::PLeadingOnes:
            order = n * n * n;
            break;
        case BenchmarkSpec::Kind::PJump: {
            const double m = static_cast<double>(spec.m);
            if (mcfg.op == MutationConfig::Operator::Swap) {
                order = std::exp(1.0) * std::pow(n, 2.0 * std::ceil(m / 2.0));
            } else {
                double binom = 1;
                for (std::size_t i = 0; i < spec.m; ++i)
                    binom *= (n - static_cast<double>(i)) / static_cast<double>(i + 1);
                double mfact = 1;
                for (std::size_t i = 2; i <= spec.m; ++i) mfact *= static_cast<double>(i);
                if (mcfg.counts.kind == CountDistribution::Kind::Poisson) {
                    order = std::exp(1.0) * mfact * mfact * binom;
                } else {
                    const double c = power_law_normalizer(mcfg.counts.beta, mcfg.counts.range_u);
                    order = std::pow(m, mcfg.counts.beta) * mfact * binom / c;
                }
            }
            break;
        }
    }
    const double b = multiplier * order;
    if (b >= static_cast<double>(std::numeric_limits<std::uint64_t>::max()))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(b) + 1;
}

// Independent runs with seeds pre-derived from master_seed; results identical
// regardless of thread count. Mean and SE are over successful runs only.
inline BatchSummary run_batch(const BenchmarkSpec& spec, const MutationConfig& mcfg,
                              std::uint64_t budget, std::size_t run_count,
                              std::uint64_t master_seed,
                              StartPolicy start_policy = StartPolicy::UniformRandom,
                              std::size_t threads = 1) {
    if (run_count < 1) throw std::invalid_argument("run_batch: run_count must be >= 1");
    BatchSummary summary;
    summary.run_count = run_count;
    summary.records.resize(run_count);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= run_count) return;
            summary.records[i] =
                run_once(spec, mcfg, budget, derive_seed(master_seed, i), start_policy);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> ts;
        for (std::size_t t = 0; t < threads; ++t) ts.emplace_back(worker);
        for (auto& t : ts) t.join();
    }

    std::size_t successes = 0;
    double sum = 0, sumsq = 0;
    for (const auto& r : summary.records) {
        if (!r.success) continue;
        ++successes;
        const auto it = static_cast<double>(r.iterations);
        sum += it;
        sumsq += it * it;
    }
    summary.success_rate = static_cast<double>(successes) / static_cast<double>(run_count);
    if (successes > 0) {
        summary.mean_iterations = sum / static_cast<double>(successes);
        if (successes > 1) {
            const double var =
                (sumsq - sum * sum / static_cast<double>(successes)) /
                static_cast<double>(successes - 1);
            summary.standard_error = std::sqrt(std::max(0.0, var) / static_cast<double>(successes));
        }
    }
    return summary;
}

}  // namespace permubench
