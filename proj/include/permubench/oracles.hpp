#pragma once

// Exact and brute-force verification machinery: closed-form lemma
// probabilities, exact mutation / EA-step kernels over S_n for small n,
// absorbing-chain hitting times, Monte-Carlo bound estimators, and BFS
// certification of the good-permutation distance bound.
//
// State enumeration is lexicographic on word notation, so the identity is
// always state 0 and serialized kernel indices are reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "permubench/benchmark.hpp"
#include "permubench/engine.hpp"
#include "permubench/mutation.hpp"
#include "permubench/permutation.hpp"
#include "permubench/random.hpp"
#include "permubench/rational.hpp"

namespace permubench {

// Cycle lengths >= 2 (sorted descending) plus the fixed-point count.
struct CycleType {
    std::vector<std::size_t> lengths;
    std::size_t fixed_points = 0;

    static CycleType of(const Permutation& sigma) {
        const auto dec = cycle_decomposition(sigma);
        CycleType ct;
        ct.fixed_points = dec.fixed_points.size();
        for (const auto& c : dec.cycles) ct.lengths.push_back(c.size());
        std::sort(ct.lengths.rbegin(), ct.lengths.rend());
        return ct;
    }

    std::size_t n() const {
        std::size_t total = fixed_points;
        for (auto l : lengths) total += l;
        return total;
    }

    std::size_t total_cycle_count() const { return lengths.size() + fixed_points; }  // r
    std::size_t deranged_count() const { return n() - fixed_points; }                // q

    // a representative permutation with this cycle type
    Permutation representative() const {
        std::vector<label_t> w(n());
        std::iota(w.begin(), w.end(), 0);
        label_t next = 0;
        for (auto len : lengths) {
            for (std::size_t j = 0; j < len; ++j)
                w[static_cast<std::size_t>(next + static_cast<label_t>(j))] =
                    next + static_cast<label_t>((j + 1) % len);
            next += static_cast<label_t>(len);
        }
        return Permutation(std::move(w));
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(lengths[i]);
        }
        s += "]+" + std::to_string(fixed_points) + "f";
        return s;
    }

    bool operator==(const CycleType&) const = default;
    bool operator<(const CycleType& o) const {
        return std::tie(lengths, fixed_points) < std::tie(o.lengths, o.fixed_points);
    }
};

struct SameCycleProbability {
    Rational exact;  // sum n_i(n_i-1) / (n(n-1)), fixed points contributing 0
    Rational bound;  // (n-r)(n-r+1) / (n(n-1))
};

inline SameCycleProbability same_cycle_probability_exact(const CycleType& ct) {
    const auto n = static_cast<std::int64_t>(ct.n());
    if (n < 2) return {Rational(0), Rational(0)};
    std::int64_t num = 0;
    for (auto l : ct.lengths) {
        const auto ll = static_cast<std::int64_t>(l);
        num += ll * (ll - 1);
    }
    const auto r = static_cast<std::int64_t>(ct.total_cycle_count());
    return {Rational(num, n * (n - 1)), Rational((n - r) * (n - r + 1), n * (n - 1))};
}

// Independent check: enumerate all n(n-1)/2 transpositions on sigma and count
// the pairs lying in a common cycle.
inline Rational same_cycle_probability_bruteforce(const Permutation& sigma) {
    const auto n = static_cast<std::int64_t>(sigma.size());
    if (n < 2) return Rational(0);
    const auto dec = cycle_decomposition(sigma);
    std::vector<int> cycle_id(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < dec.cycles.size(); ++c)
        for (label_t e : dec.cycles[c]) cycle_id[static_cast<std::size_t>(e - 1)] = static_cast<int>(c);
    std::int64_t hits = 0;
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = a + 1; b < n; ++b)
            if (cycle_id[static_cast<std::size_t>(a)] >= 0 &&
                cycle_id[static_cast<std::size_t>(a)] == cycle_id[static_cast<std::size_t>(b)])
                ++hits;
    return Rational(hits, n * (n - 1) / 2);
}

// ---------------------------------------------------------------------------
// exact kernels over S_n

namespace detail {

inline std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double b = 1;
    for (std::size_t i = 0; i < k; ++i)
        b *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    return b;
}

// lexicographic rank of a word (Lehmer code)
inline std::size_t lex_rank(const std::vector<label_t>& word) {
    const std::size_t n = word.size();
    std::size_t rank = 0;
    std::size_t f = factorial(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (word[j] < word[i]) ++smaller;
        rank += smaller * f;
        if (i + 1 < n) f /= (n - 1 - i);
    }
    return rank;
}

inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<label_t> w(n);
    std::iota(w.begin(), w.end(), 0);
    std::vector<Permutation> out;
    out.reserve(factorial(n));
    do {
        out.emplace_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// effective law of the elementary count after the scramble clamp to [0..n],
// or the (possibly shifted) swap count law truncated at `cap`
inline std::vector<double> clamped_count_pmf(const CountDistribution& d, std::size_t n) {
    std::vector<double> q(n + 1, 0.0);
    if (d.kind == CountDistribution::Kind::Poisson) {
        double mass = 0;
        double p = std::exp(-d.lambda);
        for (std::size_t k = 0; k < n; ++k) {
            q[k] = p;
            mass += p;
            p *= d.lambda / static_cast<double>(k + 1);
        }
        q[n] = 1.0 - mass;
    } else {
        double sum = 0;
        for (std::size_t i = 1; i <= d.range_u; ++i)
            sum += std::pow(static_cast<double>(i), -d.beta);
        for (std::size_t i = 1; i <= d.range_u; ++i) {
            const double p = std::pow(static_cast<double>(i), -d.beta) / sum;
            q[std::min(i, n)] += p;
        }
    }
    return q;
}

}  // namespace detail

struct ExactKernel {
    enum class Kind { SingleTransposition, Mutation, EaStep };

    std::size_t n = 0;
    Kind kind = Kind::Mutation;
    std::size_t states = 0;              // n!
    std::vector<double> probs;           // row-major, states x states
    double truncation_error = 0;         // mass not represented (Poisson tail)

    double& at(std::size_t i, std::size_t j) { return probs[i * states + j]; }
    double at(std::size_t i, std::size_t j) const { return probs[i * states + j]; }

    double max_row_sum_defect() const {
        double worst = 0;
        for (std::size_t i = 0; i < states; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < states; ++j) s += at(i, j);
            worst = std::max(worst, std::abs(1.0 - s));
        }
        return worst;
    }
};

inline void check_kernel_size(std::size_t n) {
    if (n < 2 || n > 7)
        throw std::length_error("exact kernel: n must be in [2..7]");
}

// one uniform random transposition applied to each state
inline ExactKernel single_transposition_kernel(std::size_t n) {
    check_kernel_size(n);
    const auto perms = detail::all_permutations(n);
    ExactKernel K;
    K.n = n;
    K.kind = ExactKernel::Kind::SingleTransposition;
    K.states = perms.size();
    K.probs.assign(K.states * K.states, 0.0);
    const double p = 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (label_t a = 1; a <= static_cast<label_t>(n); ++a)
            for (label_t b = a + 1; b <= static_cast<label_t>(n); ++b) {
                const auto target = apply_transposition(perms[i], Transposition(a, b));
                K.at(i, detail::lex_rank(target.word())) += p;
            }
    return K;
}

// Full mutation kernel. Swap: Poisson mixture of transposition-kernel powers,
// truncated once the tail mass drops below tail_bound (power-law counts are a
// finite sum, no truncation). Scramble: closed finite sum over k; transition
// probability depends only on the support size of target o source^-1.
inline ExactKernel mutation_kernel_exact(std::size_t n, const MutationConfig& mcfg,
                                         double tail_bound = 1e-12) {
    check_kernel_size(n);
    if (tail_bound <= 0) throw std::invalid_argument("mutation_kernel_exact: tail_bound must be > 0");
    const auto perms = detail::all_permutations(n);
    const std::size_t N = perms.size();

    ExactKernel M;
    M.n = n;
    M.kind = ExactKernel::Kind::Mutation;
    M.states = N;
    M.probs.assign(N * N, 0.0);

    if (mcfg.op == MutationConfig::Operator::Swap) {
        // weights over the number of applied transpositions
        std::vector<double> w;
        double tail = 0;
        if (mcfg.counts.kind == CountDistribution::Kind::Poisson) {
            const double lambda = mcfg.counts.lambda;
            double p = std::exp(-lambda);
            double mass = 0;
            std::size_t k = 0;
            while (1.0 - mass >= tail_bound) {
                w.push_back(p);
                mass += p;
                ++k;
                p *= lambda / static_cast<double>(k);
                if (k > 400) break;
            }
            tail = std::max(0.0, 1.0 - mass);
        } else {
            w.assign(mcfg.counts.range_u + 1, 0.0);
            double sum = 0;
            for (std::size_t i = 1; i <= mcfg.counts.range_u; ++i)
                sum += std::pow(static_cast<double>(i), -mcfg.counts.beta);
            for (std::size_t i = 1; i <= mcfg.counts.range_u; ++i)
                w[i] = std::pow(static_cast<double>(i), -mcfg.counts.beta) / sum;
        }
        if (mcfg.plus_one) w.insert(w.begin(), 0.0);
        M.truncation_error = tail;

        const ExactKernel T = single_transposition_kernel(n);
        // cur = T^k, accumulated into M with weight w[k]
        std::vector<double> cur(N * N, 0.0), next(N * N, 0.0);
        for (std::size_t i = 0; i < N; ++i) cur[i * N + i] = 1.0;  // T^0
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (k > 0) {
                std::fill(next.begin(), next.end(), 0.0);
                for (std::size_t i = 0; i < N; ++i)
                    for (std::size_t l = 0; l < N; ++l) {
                        const double c = cur[i * N + l];
                        if (c == 0.0) continue;
                        const double* trow = &T.probs[l * N];
                        double* nrow = &next[i * N];
                        for (std::size_t j = 0; j < N; ++j) nrow[j] += c * trow[j];
                    }
                cur.swap(next);
            }
            if (w[k] == 0.0) continue;
            for (std::size_t ij = 0; ij < N * N; ++ij) M.probs[ij] += w[k] * cur[ij];
        }
        return M;
    }

    // scramble: p(s) = sum_k q_k C(n-s, k-s) / (C(n,k) k!) with q the clamped
    // count law; s = |supp(target o source^-1)|, plus the k in {0,1} no-ops
    const auto q = detail::clamped_count_pmf(mcfg.counts, n);
    std::vector<double> p_of_s(n + 1, 0.0);
    for (std::size_t s = 0; s <= n; ++s) {
        double p = 0;
        for (std::size_t k = std::max<std::size_t>(2, s); k <= n; ++k)
            p += q[k] * detail::binomial(n - s, k - s) /
                 (detail::binomial(n, k) * static_cast<double>(detail::factorial(k)));
        if (s == 0) p += q[0] + q[1];
        p_of_s[s] = p;
    }
    for (std::size_t i = 0; i < N; ++i) {
        const Permutation inv = perms[i].inverse();
        for (std::size_t j = 0; j < N; ++j) {
            const Permutation rho = compose(perms[j], inv);
            const std::size_t s = n - fixed_point_count(rho);
            M.at(i, j) = p_of_s[s];
        }
    }
    return M;
}

// Independent construction of the swap+Poisson kernel as exp(lambda(T - I))
// by scaling and squaring; used as a consistency check on the series route.
inline ExactKernel swap_kernel_via_expm(std::size_t n, double lambda) {
    check_kernel_size(n);
    const ExactKernel T = single_transposition_kernel(n);
    const std::size_t N = T.states;
    std::vector<double> A(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            A[i * N + j] = lambda * (T.at(i, j) - (i == j ? 1.0 : 0.0));

    int s = 0;
    double norm = 2.0 * lambda;  // infinity norm of lambda(T - I) is at most 2 lambda
    while (norm > 0.25) {
        norm /= 2;
        ++s;
    }
    const double scale = std::pow(2.0, -s);
    for (auto& a : A) a *= scale;

    auto matmul = [N](const std::vector<double>& X, const std::vector<double>& Y,
                      std::vector<double>& Z) {
        std::fill(Z.begin(), Z.end(), 0.0);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t l = 0; l < N; ++l) {
                const double c = X[i * N + l];
                if (c == 0.0) continue;
                for (std::size_t j = 0; j < N; ++j) Z[i * N + j] += c * Y[l * N + j];
            }
    };

    // Taylor series of exp(A/2^s)
    std::vector<double> result(N * N, 0.0), term(N * N, 0.0), tmp(N * N);
    for (std::size_t i = 0; i < N; ++i) {
        result[i * N + i] = 1.0;
        term[i * N + i] = 1.0;
    }
    for (int k = 1; k <= 30; ++k) {
        matmul(term, A, tmp);
        for (std::size_t ij = 0; ij < N * N; ++ij) {
            term[ij] = tmp[ij] / static_cast<double>(k);
            result[ij] += term[ij];
        }
    }
    for (int i = 0; i < s; ++i) {
        matmul(result, result, tmp);
        result.swap(tmp);
    }

    ExactKernel M;
    M.n = n;
    M.kind = ExactKernel::Kind::Mutation;
    M.states = N;
    M.probs = std::move(result);
    return M;
}

// mutation kernel composed with elitist acceptance; absorbing at the optimum
inline ExactKernel ea_step_kernel_exact(const BenchmarkSpec& spec, const MutationConfig& mcfg,
                                        double tail_bound = 1e-12) {
    ExactKernel M = mutation_kernel_exact(spec.n, mcfg, tail_bound);
    const auto perms = detail::all_permutations(spec.n);
    std::vector<long> fit(perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i) fit[i] = evaluate(spec, perms[i]);

    ExactKernel K;
    K.n = spec.n;
    K.kind = ExactKernel::Kind::EaStep;
    K.states = M.states;
    K.truncation_error = M.truncation_error;
    K.probs.assign(K.states * K.states, 0.0);
    for (std::size_t i = 0; i < K.states; ++i) {
        double accepted = 0;
        for (std::size_t j = 0; j < K.states; ++j) {
            if (j == i) continue;
            if (fit[j] >= fit[i]) {
                K.at(i, j) = M.at(i, j);
                accepted += M.at(i, j);
            }
        }
        K.at(i, i) = 1.0 - accepted;  // rejected moves and the truncated tail stay put
    }
    return K;
}

struct StartSpec {
    StartPolicy policy = StartPolicy::UniformRandom;
    std::optional<Permutation> point;

    static StartSpec uniform() { return {StartPolicy::UniformRandom, std::nullopt}; }
    static StartSpec identity() { return {StartPolicy::Identity, std::nullopt}; }
    static StartSpec at(Permutation p) { return {StartPolicy::Explicit, std::move(p)}; }
    static StartSpec a2plus() { return {StartPolicy::UniformA2Plus, std::nullopt}; }
    static StartSpec good() { return {StartPolicy::UniformGood, std::nullopt}; }
};

// Expected iterations to absorb at the identity, averaged over the start
// distribution. Solves (I - Q) h = 1 over the non-absorbing states by Gaussian
// elimination in extended precision. Unreachable optimum reports infinity.
inline double ea_hitting_time_exact(const BenchmarkSpec& spec, const MutationConfig& mcfg,
                                    const StartSpec& start, double tail_bound = 1e-12) {
    const ExactKernel K = ea_step_kernel_exact(spec, mcfg, tail_bound);
    const std::size_t N = K.states;  // identity has rank 0 in lex order
    const std::size_t M = N - 1;

    std::vector<long double> A(M * (M + 1), 0.0L);
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j)
            A[i * (M + 1) + j] = (i == j ? 1.0L : 0.0L) - static_cast<long double>(K.at(i + 1, j + 1));
        A[i * (M + 1) + M] = 1.0L;
    }
    for (std::size_t col = 0; col < M; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < M; ++r)
            if (std::abs(A[r * (M + 1) + col]) > std::abs(A[piv * (M + 1) + col])) piv = r;
        if (std::abs(A[piv * (M + 1) + col]) < 1e-14L)
            return std::numeric_limits<double>::infinity();
        if (piv != col)
            for (std::size_t c = col; c <= M; ++c)
                std::swap(A[piv * (M + 1) + c], A[col * (M + 1) + c]);
        for (std::size_t r = 0; r < M; ++r) {
            if (r == col) continue;
            const long double factor = A[r * (M + 1) + col] / A[col * (M + 1) + col];
            if (factor == 0.0L) continue;
            for (std::size_t c = col; c <= M; ++c)
                A[r * (M + 1) + c] -= factor * A[col * (M + 1) + c];
        }
    }
    std::vector<long double> h(N, 0.0L);  // h[0] = 0 at the identity
    for (std::size_t i = 0; i < M; ++i)
        h[i + 1] = A[i * (M + 1) + M] / A[i * (M + 1) + i];

    const auto perms = detail::all_permutations(spec.n);
    long double expectation = 0;
    switch (start.policy) {
        case StartPolicy::Identity:
            return 0.0;
        case StartPolicy::Explicit: {
            if (!start.point || start.point->size() != spec.n)
                throw std::invalid_argument("ea_hitting_time_exact: bad explicit start");
            return static_cast<double>(h[detail::lex_rank(start.point->word())]);
        }
        case StartPolicy::UniformRandom: {
            for (std::size_t i = 0; i < N; ++i) expectation += h[i];
            return static_cast<double>(expectation / static_cast<long double>(N));
        }
        case StartPolicy::UniformA2Plus:
        case StartPolicy::UniformGood: {
            std::size_t count = 0;
            for (std::size_t i = 0; i < N; ++i) {
                const bool in = start.policy == StartPolicy::UniformA2Plus
                                    ? classify_region(perms[i], spec.m) == RegionLabel::A2Plus
                                    : is_good_local_optimum(perms[i], spec.m);
                if (!in) continue;
                expectation += h[i];
                ++count;
            }
            if (count == 0)
                throw std::invalid_argument("ea_hitting_time_exact: empty start set");
            return static_cast<double>(expectation / static_cast<long double>(count));
        }
    }
    throw std::logic_error("ea_hitting_time_exact: bad start policy");
}

// ---------------------------------------------------------------------------
// one-step jump probability from the PJump plateau, per cycle type

namespace detail {

// all partitions of n (parts descending, including 1s)
inline void partitions_rec(std::size_t n, std::size_t maxpart, std::vector<std::size_t>& cur,
                           std::vector<std::vector<std::size_t>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

// Cycle-type level kernel of one uniform random transposition. Valid as a
// lumped chain: the transition law out of a state depends only on its type,
// and the identity type is a singleton lump, so powers of this matrix give
// the exact probability of reaching the identity permutation.
inline std::vector<double> cycle_type_transposition_kernel(
    std::size_t n, const std::vector<std::vector<std::size_t>>& parts,
    const std::map<std::vector<std::size_t>, std::size_t>& index) {
    const std::size_t P = parts.size();
    std::vector<double> L(P * P, 0.0);
    const double denom = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;

    for (std::size_t s = 0; s < P; ++s) {
        const auto& part = parts[s];
        // multiplicity per distinct length
        std::map<std::size_t, std::size_t> mult;
        for (auto l : part) ++mult[l];

        auto type_after = [&](std::size_t remove1, std::size_t remove2,
                              std::vector<std::size_t> add) {
            std::vector<std::size_t> t = part;
            t.erase(std::find(t.begin(), t.end(), remove1));
            t.erase(std::find(t.begin(), t.end(), remove2));
            for (auto a : add)
                if (a > 0) t.push_back(a);
            std::sort(t.rbegin(), t.rend());
            return index.at(t);
        };

        // splits: both endpoints inside one cycle of length l >= 2
        for (const auto& [l, c] : mult) {
            if (l < 2) continue;
            for (std::size_t d = 1; 2 * d <= l; ++d) {
                const double pairs =
                    (2 * d == l) ? static_cast<double>(l) / 2.0 : static_cast<double>(l);
                const double p = static_cast<double>(c) * pairs / denom;
                std::vector<std::size_t> t = part;
                t.erase(std::find(t.begin(), t.end(), l));
                t.push_back(d);
                t.push_back(l - d);
                std::sort(t.rbegin(), t.rend());
                L[s * P + index.at(t)] += p;
            }
        }
        // merges: endpoints in two distinct cycles (lengths may be 1)
        for (auto it1 = mult.begin(); it1 != mult.end(); ++it1)
            for (auto it2 = it1; it2 != mult.end(); ++it2) {
                const std::size_t l1 = it1->first, c1 = it1->second;
                const std::size_t l2 = it2->first, c2 = it2->second;
                double npairs;
                if (it1 == it2) {
                    if (c1 < 2) continue;
                    npairs = static_cast<double>(c1) * static_cast<double>(c1 - 1) / 2.0;
                } else {
                    npairs = static_cast<double>(c1) * static_cast<double>(c2);
                }
                const double p =
                    npairs * static_cast<double>(l1) * static_cast<double>(l2) / denom;
                L[s * P + type_after(l1, l2, {l1 + l2})] += p;
            }
    }
    return L;
}

}  // namespace detail

// Probability that a single mutation call turns an A2Plus state into the
// identity, keyed by the state's cycle type. Swap mutation works on the
// cycle-type lumping of the transposition walk (exact, no n! blow-up);
// scramble is the closed finite sum and is the same for every type.
inline std::map<CycleType, double> one_step_jump_probability_exact(
    std::size_t n, std::size_t m, const MutationConfig& mcfg, double tail_bound = 1e-12) {
    check_jump_m(n, m);
    if (n > 24) throw std::length_error("one_step_jump_probability_exact: n too large");

    // A2Plus cycle types: partitions of m into parts >= 2, padded with fixed points
    std::vector<CycleType> types;
    for (const auto& part : detail::partitions(m)) {
        if (std::any_of(part.begin(), part.end(), [](std::size_t p) { return p < 2; }))
            continue;
        CycleType ct;
        ct.lengths = part;
        ct.fixed_points = n - m;
        types.push_back(ct);
    }

    std::map<CycleType, double> out;
    if (mcfg.op == MutationConfig::Operator::Scramble) {
        const auto q = detail::clamped_count_pmf(mcfg.counts, n);
        double p = 0;
        for (std::size_t k = m; k <= n; ++k)
            p += q[k] * detail::binomial(n - m, k - m) /
                 (detail::binomial(n, k) * static_cast<double>(detail::factorial(k)));
        for (const auto& t : types) out[t] = p;
        return out;
    }

    const auto parts = detail::partitions(n);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < parts.size(); ++i) index[parts[i]] = i;
    const auto L = detail::cycle_type_transposition_kernel(n, parts, index);
    const std::size_t P = parts.size();
    const std::size_t id_idx = index.at(std::vector<std::size_t>(n, 1));

    // count-law weights over the number of transpositions
    std::vector<double> w;
    if (mcfg.counts.kind == CountDistribution::Kind::Poisson) {
        double p = std::exp(-mcfg.counts.lambda);
        double mass = 0;
        std::size_t k = 0;
        while (1.0 - mass >= tail_bound && k < 500) {
            w.push_back(p);
            mass += p;
            ++k;
            p *= mcfg.counts.lambda / static_cast<double>(k);
        }
    } else {
        w.assign(mcfg.counts.range_u + 1, 0.0);
        double sum = 0;
        for (std::size_t i = 1; i <= mcfg.counts.range_u; ++i)
            sum += std::pow(static_cast<double>(i), -mcfg.counts.beta);
        for (std::size_t i = 1; i <= mcfg.counts.range_u; ++i)
            w[i] = std::pow(static_cast<double>(i), -mcfg.counts.beta) / sum;
    }
    if (mcfg.plus_one) w.insert(w.begin(), 0.0);

    for (const auto& t : types) {
        std::vector<std::size_t> full(t.lengths);
        full.insert(full.end(), t.fixed_points, 1);
        std::sort(full.rbegin(), full.rend());
        std::vector<double> v(P, 0.0);
        v[index.at(full)] = 1.0;
        double total = 0;
        std::vector<double> next(P);
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (k > 0) {
                std::fill(next.begin(), next.end(), 0.0);
                for (std::size_t i = 0; i < P; ++i) {
                    if (v[i] == 0.0) continue;
                    for (std::size_t j = 0; j < P; ++j) next[j] += v[i] * L[i * P + j];
                }
                v.swap(next);
            }
            total += w[k] * v[id_idx];
        }
        out[t] = total;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimators

struct Estimate {
    double value = 0;
    double standard_error = 0;
};

// fraction of mutations from sigma whose offspring is strictly fitter
inline Estimate improvement_probability_estimate(const BenchmarkSpec& spec,
                                                 const Permutation& sigma,
                                                 const MutationConfig& mcfg,
                                                 std::size_t samples, RandomStream& rng) {
    if (samples < 1) throw std::invalid_argument("improvement_probability_estimate: samples >= 1");
    const long f0 = evaluate(spec, sigma);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s)
        if (evaluate(spec, mutate(sigma, mcfg, rng)) > f0) ++hits;
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

// fraction of EA iterations (mutation + elitist acceptance) from a PJump local
// optimum whose accepted result has a different total cycle count
inline Estimate cycle_change_probability_estimate(const Permutation& sigma, std::size_t m,
                                                  const MutationConfig& mcfg,
                                                  std::size_t samples, RandomStream& rng) {
    if (classify_region(sigma, m) != RegionLabel::A2Plus)
        throw std::invalid_argument("cycle_change_probability_estimate: sigma not in A2Plus");
    const BenchmarkSpec spec = BenchmarkSpec::pjump(sigma.size(), m);
    const long f0 = evaluate(spec, sigma);
    const std::size_t c0 = cycle_decomposition(sigma).total_cycle_count();
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Permutation off = mutate(sigma, mcfg, rng);
        if (evaluate(spec, off) < f0) continue;  // rejected, parent kept
        if (cycle_decomposition(off).total_cycle_count() != c0) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

// minimum number of transpositions from sigma to any good A2Plus permutation
inline std::size_t good_distance_bfs(const Permutation& sigma, std::size_t m) {
    const std::size_t n = sigma.size();
    if (n > 8) throw std::length_error("good_distance_bfs: n must be <= 8");
    if (classify_region(sigma, m) != RegionLabel::A2Plus)
        throw std::invalid_argument("good_distance_bfs: sigma not in A2Plus");
    if (is_good_local_optimum(sigma, m)) return 0;

    std::unordered_set<std::size_t> visited{detail::lex_rank(sigma.word())};
    std::deque<std::pair<Permutation, std::size_t>> queue{{sigma, 0}};
    while (!queue.empty()) {
        auto [cur, dist] = std::move(queue.front());
        queue.pop_front();
        for (label_t a = 1; a <= static_cast<label_t>(n); ++a)
            for (label_t b = a + 1; b <= static_cast<label_t>(n); ++b) {
                Permutation nxt = apply_transposition(cur, Transposition(a, b));
                const std::size_t rank = detail::lex_rank(nxt.word());
                if (!visited.insert(rank).second) continue;
                if (is_good_local_optimum(nxt, m)) return dist + 1;
                queue.emplace_back(std::move(nxt), dist + 1);
            }
    }
    throw std::logic_error("good_distance_bfs: no good permutation reachable");
}

}  // namespace permubench
