#pragma once

// Independent reference implementations used only by the test suites.
// Each one deliberately takes a different route than the library:
//  - slow_hilbert decides solubility of a x^2 + b y^2 = z^2 by enumerating
//    primitive solutions modulo p^K (K chosen so that a smooth point exists
//    exactly when a p-adic point does) instead of the residue formulas;
//  - partition_direct_count counts partitions by the largest-part recursion;
//  - partition_geometric expands prod 1/(1-q^n) one geometric series at a
//    time instead of the pentagonal recurrence;
//  - naive_scan is the unpruned double loop over progressions.

#include <cstdint>
#include <tuple>
#include <vector>

#include "pcong/series.hpp"

namespace oracles {

int slow_hilbert(int64_t a, int64_t b, uint64_t place);

// Number of partitions of n (n <= 120 or so; exact in 64 bits).
uint64_t partition_direct_count(uint32_t n);

// Entries p(0..max_index) mod m via geometric-series products.
std::vector<uint64_t> partition_geometric(uint64_t max_index, uint64_t m);

struct NaiveHit {
    uint64_t A, B, support;
    auto operator<=>(const NaiveHit&) const = default;
};

std::vector<NaiveHit> naive_scan(const pcong::series::CoeffTable& t, uint64_t ell_power,
                                 uint64_t a_min, uint64_t a_max, uint64_t min_support);

} // namespace oracles
