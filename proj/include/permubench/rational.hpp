#pragma once

// Minimal exact rational on 64-bit integers. The lemma-level probabilities it
// carries have denominators bounded by n(n-1) for small n, so no bignum is
// needed; construction and arithmetic throw on overflow.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permubench {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        normalize();
    }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return mk(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                  checked_mul(a.den, b.den));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational(-b.num, b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return mk(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational: division by zero");
        return mk(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

private:
    static Rational mk(std::int64_t n, std::int64_t d) { return Rational(n, d); }

    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        const __int128 r = static_cast<__int128>(a) * b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<std::int64_t>(r);
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        const __int128 r = static_cast<__int128>(a) + b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<std::int64_t>(r);
    }
};

}  // namespace permubench
