#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zerosum {

/**
 * Exact rational on int64 with normalized sign and gcd-reduced terms.
 * Comparisons cross-multiply in 128 bits, so desk-scale bound values
 * (numerators up to ~1e12) are safe.
 */
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }
    std::int64_t floor() const {
        std::int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace zerosum
