#pragma once

// Value-semantics permutation algebra on [1..n]: word notation, composition,
// transpositions, cycle structure, and the fitness-region / goodness
// classifications used by the jump benchmarks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace permubench {

using label_t = std::int32_t;  // 1-based element label in user-facing I/O

// A permutation of [1..n] stored in word notation. Internally 0-based:
// word()[i] is sigma(i+1)-1. All I/O and parsing is 1-based.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<label_t> word0) : word_(std::move(word0)) {
        validate();
    }

    static Permutation identity(std::size_t n) {
        std::vector<label_t> w(n);
        std::iota(w.begin(), w.end(), 0);
        return Permutation(std::move(w));
    }

    // Parses comma-separated 1-based labels, e.g. "2,1,4,5,3".
    static Permutation parse(const std::string& text) {
        std::vector<label_t> w;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t pos = 0;
            long v = std::stol(tok, &pos);
            while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
            if (pos != tok.size())
                throw std::invalid_argument("permutation parse: bad token '" + tok + "'");
            w.push_back(static_cast<label_t>(v - 1));
        }
        if (w.empty()) throw std::invalid_argument("permutation parse: empty input");
        return Permutation(std::move(w));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(word_[i] + 1);
        }
        return s;
    }

    std::size_t size() const { return word_.size(); }
    const std::vector<label_t>& word() const { return word_; }

    // image of 1-based label i
    label_t operator()(label_t i) const { return word_[static_cast<std::size_t>(i - 1)] + 1; }

    bool is_identity() const {
        for (std::size_t i = 0; i < word_.size(); ++i)
            if (word_[i] != static_cast<label_t>(i)) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<label_t> inv(word_.size());
        for (std::size_t i = 0; i < word_.size(); ++i)
            inv[static_cast<std::size_t>(word_[i])] = static_cast<label_t>(i);
        Permutation p;
        p.word_ = std::move(inv);
        return p;
    }

    bool operator==(const Permutation&) const = default;

private:
    void validate() const {
        std::vector<char> seen(word_.size(), 0);
        for (label_t v : word_) {
            if (v < 0 || static_cast<std::size_t>(v) >= word_.size())
                throw std::invalid_argument("permutation: label out of range");
            if (seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("permutation: duplicate label");
            seen[static_cast<std::size_t>(v)] = 1;
        }
        if (word_.empty()) throw std::invalid_argument("permutation: size must be >= 1");
    }

    std::vector<label_t> word_;
};

// Unordered pair of distinct 1-based labels.
struct Transposition {
    label_t a = 1;
    label_t b = 2;

    Transposition(label_t a_, label_t b_) : a(std::min(a_, b_)), b(std::max(a_, b_)) {
        if (a == b) throw std::invalid_argument("transposition: labels must differ");
        if (a < 1) throw std::invalid_argument("transposition: labels must be >= 1");
    }

    bool operator==(const Transposition&) const = default;
};

// (outer o inner)(i) = outer(inner(i))
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size())
        throw std::invalid_argument("compose: size mismatch");
    std::vector<label_t> w(outer.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = outer.word()[static_cast<std::size_t>(inner.word()[i])];
    return Permutation(std::move(w));
}

// t o sigma: swap the word entries holding values t.a and t.b.
inline Permutation apply_transposition(const Permutation& sigma, const Transposition& t) {
    if (static_cast<std::size_t>(t.b) > sigma.size())
        throw std::invalid_argument("apply_transposition: label out of range");
    std::vector<label_t> w = sigma.word();
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == t.a - 1) ia = i;
        if (w[i] == t.b - 1) ib = i;
    }
    std::swap(w[ia], w[ib]);
    return Permutation(std::move(w));
}

// Disjoint-cycle form: cycles of length >= 2 (1-based labels, canonical:
// each rotated to start at its minimum, cycles sorted by that minimum) plus
// the fixed points stored separately.
struct CycleDecomposition {
    std::vector<std::vector<label_t>> cycles;
    std::set<label_t> fixed_points;
    std::size_t n = 0;

    std::size_t long_cycle_count() const { return cycles.size(); }           // R
    std::size_t total_cycle_count() const { return cycles.size() + fixed_points.size(); }  // r
    std::size_t deranged_count() const { return n - fixed_points.size(); }   // q

    bool operator==(const CycleDecomposition&) const = default;
};

inline CycleDecomposition cycle_decomposition(const Permutation& sigma) {
    const auto& w = sigma.word();
    const std::size_t n = w.size();
    CycleDecomposition dec;
    dec.n = n;
    std::vector<char> visited(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        std::vector<label_t> cyc;
        std::size_t cur = start;
        do {
            visited[cur] = 1;
            cyc.push_back(static_cast<label_t>(cur + 1));
            cur = static_cast<std::size_t>(w[cur]);
        } while (cur != start);
        if (cyc.size() == 1) {
            dec.fixed_points.insert(cyc[0]);
        } else {
            dec.cycles.push_back(std::move(cyc));  // starts at its minimum by construction
        }
    }
    return dec;
}

inline Permutation rebuild(const CycleDecomposition& dec) {
    std::vector<label_t> w(dec.n);
    std::iota(w.begin(), w.end(), 0);
    for (const auto& cyc : dec.cycles)
        for (std::size_t j = 0; j < cyc.size(); ++j)
            w[static_cast<std::size_t>(cyc[j] - 1)] = cyc[(j + 1) % cyc.size()] - 1;
    return Permutation(std::move(w));
}

// g(sigma): number of fixed points; also the Ham fitness.
inline std::size_t fixed_point_count(const Permutation& sigma) {
    std::size_t g = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma.word()[i] == static_cast<label_t>(i)) ++g;
    return g;
}

// n - (number of cycles counting fixed points): the shortest transposition
// product expressing sigma.
inline std::size_t min_transpositions_to_identity(const Permutation& sigma) {
    return sigma.size() - cycle_decomposition(sigma).total_cycle_count();
}

enum class RegionLabel { A1, A2Interior, A2Plus, A3 };

inline const char* to_string(RegionLabel r) {
    switch (r) {
        case RegionLabel::A1: return "A1";
        case RegionLabel::A2Interior: return "A2Interior";
        case RegionLabel::A2Plus: return "A2Plus";
        case RegionLabel::A3: return "A3";
    }
    return "?";
}

inline void check_jump_m(std::size_t n, std::size_t m) {
    if (m < 3 || m > n)
        throw std::invalid_argument("jump parameter m must satisfy 3 <= m <= n");
}

inline RegionLabel classify_region(const Permutation& sigma, std::size_t m) {
    const std::size_t n = sigma.size();
    check_jump_m(n, m);
    const std::size_t g = fixed_point_count(sigma);
    if (g == n) return RegionLabel::A3;
    if (g == n - m) return RegionLabel::A2Plus;
    if (g < n - m) return RegionLabel::A2Interior;
    return RegionLabel::A1;
}

// A plateau state whose non-trivial cycles maximize the cycle count:
// m/2 disjoint 2-cycles (m even), or (m-3)/2 of them plus one 3-cycle (m odd).
inline bool is_good_local_optimum(const Permutation& sigma, std::size_t m) {
    if (classify_region(sigma, m) != RegionLabel::A2Plus) return false;
    const auto dec = cycle_decomposition(sigma);
    std::size_t twos = 0, threes = 0;
    for (const auto& c : dec.cycles) {
        if (c.size() == 2) ++twos;
        else if (c.size() == 3) ++threes;
        else return false;
    }
    if (m % 2 == 0) return threes == 0 && twos == m / 2;
    return threes == 1 && twos == (m - 3) / 2;
}

}  // namespace permubench
