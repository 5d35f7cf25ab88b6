#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "pcong/errors.hpp"

namespace pcong {

// Exact rational with int64 numerator/denominator, always reduced, den > 0.
// Intermediate products go through __int128; anything that no longer fits
// 64 bits throws Overflow. Large enough for exponent offsets, phase
// exponents and Hilbert-symbol arguments, which is all we need.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    constexpr Rat() = default;
    constexpr Rat(int64_t n) : num(n), den(1) {}
    Rat(int64_t n, int64_t d) { assign(n, d); }

    static Rat from128(__int128 n, __int128 d);

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    bool negative() const { return num < 0; }

    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;

    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        return (__int128)num * o.den < (__int128)o.num * den;
    }

    // Floor of the rational as an integer.
    int64_t floor() const {
        int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }

    // Fractional part in [0, 1).
    Rat frac() const { return *this - Rat(floor()); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

private:
    void assign(int64_t n, int64_t d);
};

inline void Rat::assign(int64_t n, int64_t d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num = n;
    den = d;
}

inline Rat Rat::from128(__int128 n, __int128 d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw Overflow("rational overflow");
    Rat r;
    r.num = (int64_t)n;
    r.den = (int64_t)d;
    return r;
}

inline Rat Rat::operator+(const Rat& o) const {
    return from128((__int128)num * o.den + (__int128)o.num * den,
                   (__int128)den * o.den);
}

inline Rat Rat::operator-(const Rat& o) const {
    return from128((__int128)num * o.den - (__int128)o.num * den,
                   (__int128)den * o.den);
}

inline Rat Rat::operator*(const Rat& o) const {
    return from128((__int128)num * o.num, (__int128)den * o.den);
}

inline Rat Rat::operator/(const Rat& o) const {
    if (o.num == 0) throw Error("division by zero rational");
    return from128((__int128)num * o.den, (__int128)den * o.num);
}

} // namespace pcong
