#pragma once

// Seeded random primitives. The generator is xoshiro256** seeded through the
// SplitMix64 finalizer, both fixed here so that draw sequences are identical
// across platforms and toolchain versions.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "permubench/permutation.hpp"

namespace permubench {

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Per-run seed derivation: the i-th stream of a master seed is the SplitMix64
// output at offset i+1. Independent of scheduling, documented for reproducing
// individual runs of a batch.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed + index * 0x9E3779B97F4A7C15ULL;
    return detail::splitmix64_next(s);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64_next(sm);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1) with 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, bound), unbiased via rejection
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be > 0");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

// Which law the elementary-operation count k is drawn from.
struct CountDistribution {
    enum class Kind { Poisson, PowerLaw };
    Kind kind = Kind::Poisson;
    double lambda = 1.0;      // Poisson mean
    double beta = 1.5;        // power-law exponent, > 1
    std::size_t range_u = 1;  // power-law upper limit

    static CountDistribution poisson(double lambda) {
        if (lambda <= 0) throw std::invalid_argument("poisson: lambda must be > 0");
        CountDistribution d;
        d.kind = Kind::Poisson;
        d.lambda = lambda;
        return d;
    }

    static CountDistribution power_law(double beta, std::size_t u) {
        if (beta <= 1) throw std::invalid_argument("power_law: beta must be > 1");
        if (u < 1) throw std::invalid_argument("power_law: u must be >= 1");
        CountDistribution d;
        d.kind = Kind::PowerLaw;
        d.beta = beta;
        d.range_u = u;
        return d;
    }
};

// Inversion by sequential search; exact for the small lambdas used here.
inline std::size_t poisson_sample(double lambda, RandomStream& rng) {
    if (lambda <= 0) throw std::invalid_argument("poisson_sample: lambda must be > 0");
    double p = std::exp(-lambda);
    double cdf = p;
    const double x = rng.next_double();
    std::size_t k = 0;
    while (x >= cdf) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
        if (p == 0.0) break;  // underflow guard for absurd draws
    }
    return k;
}

// Pr[X=i] = C_{beta,u} i^-beta on [1..u]. Cumulative table + binary search;
// tables are cached per (beta,u) since u can be n and draws are hot-path.
class PowerLawSampler {
public:
    PowerLawSampler(double beta, std::size_t u) {
        if (beta <= 1) throw std::invalid_argument("power_law: beta must be > 1");
        if (u < 1) throw std::invalid_argument("power_law: u must be >= 1");
        cdf_.resize(u);
        double sum = 0;
        for (std::size_t i = 1; i <= u; ++i) {
            sum += std::pow(static_cast<double>(i), -beta);
            cdf_[i - 1] = sum;
        }
        for (auto& c : cdf_) c /= sum;
        cdf_.back() = 1.0;
        normalizer_ = 1.0 / sum;
    }

    double normalizer() const { return normalizer_; }  // C_{beta,u}

    std::size_t sample(RandomStream& rng) const {
        const double x = rng.next_double();
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), x);
        if (it == cdf_.end()) --it;
        return static_cast<std::size_t>(it - cdf_.begin()) + 1;
    }

private:
    std::vector<double> cdf_;
    double normalizer_ = 1.0;
};

namespace detail {
inline const PowerLawSampler& cached_power_law(double beta, std::size_t u) {
    thread_local std::map<std::pair<double, std::size_t>, PowerLawSampler> cache;
    auto key = std::make_pair(beta, u);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, PowerLawSampler(beta, u)).first;
    return it->second;
}
}  // namespace detail

inline std::size_t power_law_sample(double beta, std::size_t u, RandomStream& rng) {
    return detail::cached_power_law(beta, u).sample(rng);
}

inline double power_law_normalizer(double beta, std::size_t u) {
    return detail::cached_power_law(beta, u).normalizer();
}

inline std::size_t count_sample(const CountDistribution& d, RandomStream& rng) {
    if (d.kind == CountDistribution::Kind::Poisson)
        return poisson_sample(d.lambda, rng);
    return power_law_sample(d.beta, d.range_u, rng);
}

// Uniform over all n(n-1)/2 unordered pairs.
inline Transposition random_transposition(std::size_t n, RandomStream& rng) {
    if (n < 2) throw std::invalid_argument("random_transposition: n must be >= 2");
    const auto a = static_cast<label_t>(rng.next_below(n));
    auto b = static_cast<label_t>(rng.next_below(n - 1));
    if (b >= a) ++b;
    return Transposition(a + 1, b + 1);
}

// Uniform k-subset of [1..n] by partial Fisher-Yates on labels.
inline std::set<label_t> random_k_subset(std::size_t n, std::size_t k, RandomStream& rng) {
    if (k > n) throw std::invalid_argument("random_k_subset: k > n");
    std::vector<label_t> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::set<label_t> out;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.next_below(n - i);
        std::swap(pool[i], pool[j]);
        out.insert(pool[i]);
    }
    return out;
}

inline Permutation random_permutation_uniform(std::size_t n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("random_permutation_uniform: n must be >= 1");
    std::vector<label_t> w(n);
    std::iota(w.begin(), w.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = rng.next_below(i + 1);
        std::swap(w[i], w[j]);
    }
    return Permutation(std::move(w));
}

// Draws rho uniform over permutations of `positions` (fixed points allowed)
// and returns rho o sigma. Word entries with values outside `positions` are
// untouched.
inline Permutation subset_shuffle(const Permutation& sigma,
                                  const std::set<label_t>& positions,
                                  RandomStream& rng) {
    const std::size_t n = sigma.size();
    for (label_t p : positions)
        if (p < 1 || static_cast<std::size_t>(p) > n)
            throw std::invalid_argument("subset_shuffle: label out of range");
    if (positions.size() < 2) return sigma;

    std::vector<label_t> elems(positions.begin(), positions.end());
    std::vector<label_t> image = elems;
    for (std::size_t i = image.size() - 1; i > 0; --i) {
        const std::size_t j = rng.next_below(i + 1);
        std::swap(image[i], image[j]);
    }
    std::vector<label_t> rho_map(n, -1);  // 0-based value -> 0-based image
    for (std::size_t i = 0; i < elems.size(); ++i)
        rho_map[static_cast<std::size_t>(elems[i] - 1)] = image[i] - 1;

    std::vector<label_t> w = sigma.word();
    for (auto& v : w) {
        const label_t r = rho_map[static_cast<std::size_t>(v)];
        if (r >= 0) v = r;
    }
    return Permutation(std::move(w));
}

}  // namespace permubench
