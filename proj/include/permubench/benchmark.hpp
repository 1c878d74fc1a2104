#pragma once

// The pseudo-Boolean -> permutation benchmark lift and the three concrete
// fitness functions PHam, PLeadingOnes and PJump. The named benchmarks are
// evaluated directly on the permutation (not through the indicator string);
// equivalence with the lift is enforced by tests.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permubench/permutation.hpp"

namespace permubench {

using PseudoBooleanFn = std::function<long(const std::vector<bool>&)>;

struct BenchmarkSpec {
    enum class Kind { PHam, PLeadingOnes, PJump, Lifted };

    Kind kind = Kind::PHam;
    std::size_t n = 0;
    std::size_t m = 0;             // PJump only
    PseudoBooleanFn lifted_fn;     // Lifted only
    // Lifted only: whether the all-ones string is the unique maximum of f,
    // in which case the identity is the global optimum. Declared by the
    // caller; the lift itself cannot decide it.
    bool lifted_identity_optimal = false;

    static BenchmarkSpec pham(std::size_t n) { return {Kind::PHam, n, 0, {}, false}; }

    static BenchmarkSpec pleadingones(std::size_t n) {
        return {Kind::PLeadingOnes, n, 0, {}, false};
    }

    static BenchmarkSpec pjump(std::size_t n, std::size_t m) {
        check_jump_m(n, m);
        return {Kind::PJump, n, m, {}, false};
    }

    std::string key() const {
        switch (kind) {
            case Kind::PHam: return "pham:" + std::to_string(n);
            case Kind::PLeadingOnes: return "pleadingones:" + std::to_string(n);
            case Kind::PJump: return "pjump:" + std::to_string(n) + ":" + std::to_string(m);
            case Kind::Lifted: return "lifted:" + std::to_string(n);
        }
        return "?";
    }

    std::string kind_name() const {
        switch (kind) {
            case Kind::PHam: return "pham";
            case Kind::PLeadingOnes: return "pleadingones";
            case Kind::PJump: return "pjump";
            case Kind::Lifted: return "lifted";
        }
        return "?";
    }
};

// x(sigma)_i = 1 iff sigma(i) = i
inline std::vector<bool> indicator_string(const Permutation& sigma) {
    std::vector<bool> bits(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        bits[i] = sigma.word()[i] == static_cast<label_t>(i);
    return bits;
}

inline BenchmarkSpec lift_pseudo_boolean(PseudoBooleanFn f, std::size_t n,
                                         bool identity_optimal = false) {
    BenchmarkSpec spec;
    spec.kind = BenchmarkSpec::Kind::Lifted;
    spec.n = n;
    spec.lifted_fn = std::move(f);
    spec.lifted_identity_optimal = identity_optimal;
    return spec;
}

inline long evaluate(const BenchmarkSpec& spec, const Permutation& sigma) {
    if (spec.n != sigma.size())
        throw std::invalid_argument("evaluate: size mismatch");
    const auto& w = sigma.word();
    switch (spec.kind) {
        case BenchmarkSpec::Kind::PHam:
            return static_cast<long>(fixed_point_count(sigma));
        case BenchmarkSpec::Kind::PLeadingOnes: {
            // scan stops at the first misplaced element
            std::size_t lo = 0;
            while (lo < w.size() && w[lo] == static_cast<label_t>(lo)) ++lo;
            return static_cast<long>(lo);
        }
        case BenchmarkSpec::Kind::PJump: {
            const auto g = static_cast<long>(fixed_point_count(sigma));
            const auto n = static_cast<long>(spec.n);
            const auto m = static_cast<long>(spec.m);
            if (g <= n - m || g == n) return m + g;
            return n - g;
        }
        case BenchmarkSpec::Kind::Lifted:
            return spec.lifted_fn(indicator_string(sigma));
    }
    throw std::logic_error("evaluate: bad kind");
}

inline bool is_global_optimum(const BenchmarkSpec& spec, const Permutation& sigma) {
    if (spec.n != sigma.size()) return false;
    if (spec.kind == BenchmarkSpec::Kind::Lifted && !spec.lifted_identity_optimal)
        throw std::invalid_argument(
            "is_global_optimum: lifted spec without a declared optimum predicate");
    return sigma.is_identity();
}

}  // namespace permubench
