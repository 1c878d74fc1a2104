#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "permubench/benchmark.hpp"
#include "permubench/random.hpp"

#include <numeric>

using namespace permubench;

namespace {

std::vector<Permutation> all_perms(std::size_t n) {
    std::vector<label_t> w(n);
    std::iota(w.begin(), w.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

long ham(const std::vector<bool>& x) {
    long s = 0;
    for (bool b : x) s += b;
    return s;
}

long leading_ones(const std::vector<bool>& x) {
    long s = 0;
    for (bool b : x) {
        if (!b) break;
        ++s;
    }
    return s;
}

long jump(const std::vector<bool>& x, long m) {
    const long n = static_cast<long>(x.size());
    const long o = ham(x);
    if (o <= n - m || o == n) return m + o;
    return n - o;
}

}  // namespace

TEST_CASE("indicator string") {
    const auto x = indicator_string(Permutation::parse("1,3,2,4"));
    CHECK(x == std::vector<bool>{true, false, false, true});
    CHECK(indicator_string(Permutation::identity(3)) ==
          std::vector<bool>{true, true, true});
}

TEST_CASE("pham values") {
    const auto spec = BenchmarkSpec::pham(5);
    CHECK(evaluate(spec, Permutation::identity(5)) == 5);
    CHECK(evaluate(spec, Permutation::parse("2,1,4,5,3")) == 0);
    CHECK(evaluate(spec, Permutation::parse("1,2,4,5,3")) == 2);
    CHECK_THROWS_AS(evaluate(spec, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("pleadingones values") {
    const auto spec = BenchmarkSpec::pleadingones(5);
    CHECK(evaluate(spec, Permutation::identity(5)) == 5);
    CHECK(evaluate(spec, Permutation::parse("1,2,4,5,3")) == 2);
    CHECK(evaluate(spec, Permutation::parse("2,1,3,4,5")) == 0);
    CHECK(evaluate(spec, Permutation::parse("1,2,3,5,4")) == 3);
}

TEST_CASE("pjump values") {
    const auto spec = BenchmarkSpec::pjump(5, 3);
    CHECK(evaluate(spec, Permutation::identity(5)) == 8);               // g=n
    CHECK(evaluate(spec, Permutation::parse("2,3,1,4,5")) == 5);        // g=2=n-m: plateau
    CHECK(evaluate(spec, Permutation::parse("2,1,4,5,3")) == 3);        // g=0
    CHECK(evaluate(spec, Permutation::parse("2,1,3,4,5")) == 2);        // g=3: valley, n-g
    CHECK_THROWS_AS(BenchmarkSpec::pjump(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(BenchmarkSpec::pjump(5, 6), std::invalid_argument);
}

TEST_CASE("direct evaluation equals the lift, exhaustive n<=6") {
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto lifted_ham = lift_pseudo_boolean(ham, n, true);
        const auto lifted_lo = lift_pseudo_boolean(leading_ones, n, true);
        for (const auto& p : all_perms(n)) {
            CHECK(evaluate(BenchmarkSpec::pham(n), p) == evaluate(lifted_ham, p));
            CHECK(evaluate(BenchmarkSpec::pleadingones(n), p) == evaluate(lifted_lo, p));
            for (std::size_t m = 3; m <= n; ++m) {
                const auto lifted_jump = lift_pseudo_boolean(
                    [m](const std::vector<bool>& x) { return jump(x, static_cast<long>(m)); },
                    n, true);
                CHECK(evaluate(BenchmarkSpec::pjump(n, m), p) == evaluate(lifted_jump, p));
            }
        }
    }
}

TEST_CASE("pjump fitness across regions, exhaustive n=6") {
    // identity strictly beats everything; plateau strictly beats the rest
    for (std::size_t m : {3, 4}) {
        const auto spec = BenchmarkSpec::pjump(6, m);
        const long opt = evaluate(spec, Permutation::identity(6));
        const long plateau = static_cast<long>(m + 6 - m);
        for (const auto& p : all_perms(6)) {
            const long f = evaluate(spec, p);
            if (p.is_identity()) continue;
            CHECK(f < opt);
            switch (classify_region(p, m)) {
                case RegionLabel::A2Plus: CHECK(f == plateau); break;
                case RegionLabel::A2Interior:
                case RegionLabel::A1: CHECK(f < plateau); break;
                case RegionLabel::A3: CHECK(false); break;
            }
        }
    }
}

TEST_CASE("global optimum predicate") {
    CHECK(is_global_optimum(BenchmarkSpec::pham(4), Permutation::identity(4)));
    CHECK_FALSE(is_global_optimum(BenchmarkSpec::pham(4), Permutation::parse("2,1,3,4")));
    CHECK_FALSE(is_global_optimum(BenchmarkSpec::pham(4), Permutation::identity(5)));

    const auto declared = lift_pseudo_boolean(ham, 4, true);
    CHECK(is_global_optimum(declared, Permutation::identity(4)));
    const auto undeclared = lift_pseudo_boolean(ham, 4, false);
    CHECK_THROWS_AS(is_global_optimum(undeclared, Permutation::identity(4)),
                    std::invalid_argument);
}

TEST_CASE("benchmark keys") {
    CHECK(BenchmarkSpec::pham(10).key() == "pham:10");
    CHECK(BenchmarkSpec::pleadingones(7).key() == "pleadingones:7");
    CHECK(BenchmarkSpec::pjump(12, 3).key() == "pjump:12:3");
    CHECK(BenchmarkSpec::pjump(12, 3).kind_name() == "pjump");
}
