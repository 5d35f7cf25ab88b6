#pragma once

#include <cstdint>
#include <vector>

#include "pcong/congruence.hpp"
#include "pcong/series.hpp"

namespace pcong::scanner {

struct ScanConfig {
    uint64_t ell_power = 5;   // a prime power ell^m
    uint64_t a_min = 1;
    uint64_t a_max = 30;
    uint64_t min_support = 16;
    bool require_radu = false;
    bool dedupe = true;       // suppress sub-progressions of emitted hits
    unsigned workers = 1;
};

struct ScanHit {
    congruence::RamanujanCongruence rc;
    uint64_t support = 0;
    bool radu_flagged = false;
};

// Exhaustive progression scan: emits (A, B) whenever every in-range index
// A n + B vanishes mod ell_power with at least min_support indices tested.
// Every emitted hit is re-verified through congruence::verify_ramanujan.
// Output is sorted by (A, B) and independent of the worker count.
std::vector<ScanHit> scan(const series::CoeffTable& t, const ScanConfig& cfg);

struct SquareClassScanConfig {
    uint64_t ell_power = 5;
    std::vector<uint64_t> moduli;
    std::vector<uint64_t> condition_primes;
    uint64_t min_support = 8;
    unsigned workers = 1;
};

struct SquareClassHit {
    congruence::SquareClassCongruence sq;
    uint64_t support = 0;
};

// For each modulus A and offset in [0, A * prod(condition primes)), tests
// every sign assignment in {-1, 0, +1}^k on the progression family
// A nu + offset with Legendre conditions on nu, and emits the fully
// vanishing assignments with enough support.
std::vector<SquareClassHit> scan_square_class(const series::CoeffTable& t,
                                              const SquareClassScanConfig& cfg);

} // namespace pcong::scanner
