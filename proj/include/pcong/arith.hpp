#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pcong/errors.hpp"
#include "pcong/rational.hpp"

namespace pcong {

// Place label for local symbols: a prime number, or INFINITE_PLACE for the
// archimedean place.
inline constexpr uint64_t INFINITE_PLACE = 0;

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);

// Reduce a (possibly negative) integer into [0, m).
uint64_t reduce_mod(int64_t a, uint64_t m);

// Inverse of a modulo m, in [1, m). Throws NonInvertible when gcd(a, m) != 1.
uint64_t mod_inverse(int64_t a, uint64_t m);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(uint64_t n);

// Exact prime factorization, primes strictly increasing.
struct Factorization {
    std::vector<std::pair<uint64_t, uint32_t>> factors;

    uint64_t value() const;
    uint32_t exponent_of(uint64_t p) const;
    bool empty() const { return factors.empty(); }
};

// Trial division for small primes plus Brent-cycle rho for the rest;
// handles the full uint64 range. factorize(1) is the empty factorization.
Factorization factorize(uint64_t n);

// Product of the distinct primes dividing n; squarefree_part(1) = 1.
uint64_t squarefree_part(uint64_t n);

// p-adic valuation of n (n > 0).
uint32_t valuation(uint64_t n, uint64_t p);

// Full Kronecker symbol (a|n), extended to all integers n with the standard
// conventions: (a|0) = 1 iff a = +-1, (a|-1) = -1 iff a < 0, and the
// (a|2) supplement for even n.
int kronecker(int64_t a, int64_t n);

// Local Hilbert symbol (a,b)_v for nonzero rationals, v an odd prime, 2, or
// INFINITE_PLACE. Computed by the closed-form valuation/residue formulas.
int hilbert_symbol(const Rat& a, const Rat& b, uint64_t place);
int hilbert_symbol(int64_t a, int64_t b, uint64_t place);

} // namespace pcong
