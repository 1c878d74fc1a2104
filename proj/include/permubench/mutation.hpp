#pragma once

// The three mutation operators: swap (k independent uniform transpositions,
// k ~ counts), scramble (uniform k-subset reshuffled), and the heavy-tailed
// scramble, which is scramble with a power-law count distribution.

#include <string>

#include "permubench/permutation.hpp"
#include "permubench/random.hpp"

namespace permubench {

struct MutationConfig {
    enum class Operator { Swap, Scramble };

    Operator op = Operator::Swap;
    CountDistribution counts = CountDistribution::poisson(1.0);
    bool plus_one = false;  // Swap only: apply k+1 transpositions (Scharnow et al.)

    static MutationConfig swap_poisson(double lambda = 1.0, bool plus_one = false) {
        return {Operator::Swap, CountDistribution::poisson(lambda), plus_one};
    }
    static MutationConfig scramble_poisson(double lambda = 1.0) {
        return {Operator::Scramble, CountDistribution::poisson(lambda), false};
    }
    static MutationConfig scramble_power_law(double beta, std::size_t n) {
        return {Operator::Scramble, CountDistribution::power_law(beta, n), false};
    }

    std::string operator_name() const {
        return op == Operator::Swap ? "swap" : "scramble";
    }

    std::string counts_name() const {
        if (counts.kind == CountDistribution::Kind::Poisson) {
            std::string s = "poisson(" + std::to_string(counts.lambda) + ")";
            if (plus_one) s += "+1";
            return s;
        }
        return "powerlaw(" + std::to_string(counts.beta) + "," +
               std::to_string(counts.range_u) + ")";
    }
};

namespace detail {

// Applies k uniform transpositions in place; word and inv must be consistent
// (inv[v] = position of value v). Returns k.
inline std::size_t swap_mutate_inplace(std::vector<label_t>& word,
                                       std::vector<label_t>& inv,
                                       const CountDistribution& counts,
                                       bool plus_one, RandomStream& rng) {
    const std::size_t n = word.size();
    std::size_t k = count_sample(counts, rng);
    if (plus_one) ++k;
    for (std::size_t i = 0; i < k; ++i) {
        const auto a = static_cast<label_t>(rng.next_below(n));
        auto b = static_cast<label_t>(rng.next_below(n - 1));
        if (b >= a) ++b;
        const label_t pa = inv[static_cast<std::size_t>(a)];
        const label_t pb = inv[static_cast<std::size_t>(b)];
        std::swap(word[static_cast<std::size_t>(pa)], word[static_cast<std::size_t>(pb)]);
        inv[static_cast<std::size_t>(a)] = pb;
        inv[static_cast<std::size_t>(b)] = pa;
    }
    return k;
}

}  // namespace detail

// sigma' = T_k o ... o T_1 o sigma with k drawn from counts (k+1 if plus_one).
// Transpositions are independent; duplicates may cancel. k=0 returns sigma.
inline Permutation swap_mutate(const Permutation& sigma, const CountDistribution& counts,
                               bool plus_one, RandomStream& rng) {
    if (sigma.size() < 2)
        throw std::invalid_argument("swap_mutate: n must be >= 2");
    std::vector<label_t> word = sigma.word();
    std::vector<label_t> inv(word.size());
    for (std::size_t i = 0; i < word.size(); ++i)
        inv[static_cast<std::size_t>(word[i])] = static_cast<label_t>(i);
    detail::swap_mutate_inplace(word, inv, counts, plus_one, rng);
    return Permutation(std::move(word));
}

// Draws k from counts (clamped to n: the law is otherwise unchanged, draws
// above n just select every position), picks a uniform k-subset and reshuffles
// it. k in {0,1} returns the parent.
inline Permutation scramble_mutate(const Permutation& sigma, const CountDistribution& counts,
                                   RandomStream& rng) {
    const std::size_t n = sigma.size();
    std::size_t k = count_sample(counts, rng);
    if (k > n) k = n;
    if (k < 2) return sigma;
    return subset_shuffle(sigma, random_k_subset(n, k, rng), rng);
}

inline Permutation mutate(const Permutation& sigma, const MutationConfig& cfg,
                          RandomStream& rng) {
    if (cfg.op == MutationConfig::Operator::Swap)
        return swap_mutate(sigma, cfg.counts, cfg.plus_one, rng);
    return scramble_mutate(sigma, cfg.counts, rng);
}

}  // namespace permubench
