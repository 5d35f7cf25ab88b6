#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcong/arith.hpp"
#include "pcong/series.hpp"

namespace pcong::congruence {

// p(A n + B) == 0 (mod ell^m) for all integers n.
struct RamanujanCongruence {
    uint64_t ell = 5;
    uint32_t m = 1;
    uint64_t A = 1;
    uint64_t B = 0;

    void validate() const;
    uint64_t ell_power() const;
};

// Legendre-symbol constraint at one prime; the Zero* variants are the
// sign-set conditions {0, eps}.
enum class SignCond : uint8_t { Minus, Zero, Plus, ZeroOrMinus, ZeroOrPlus };

bool sign_cond_matches(SignCond c, int symbol);
std::string sign_cond_str(SignCond c);

// Two offset conventions, disambiguated by a tag:
//  - Scaled24 ("thmA" on the wire): p((modulus*n + offset)/24), conditions on n;
//  - Direct:                        p(modulus*nu + offset), conditions on nu.
enum class OffsetConvention : uint8_t { Scaled24, Direct };

struct SquareClassCongruence {
    uint64_t ell = 5;
    uint32_t m = 1;
    uint64_t modulus = 1;
    OffsetConvention convention = OffsetConvention::Scaled24;
    int64_t offset = 1;
    std::map<uint64_t, SignCond> conditions;

    void validate() const;
    uint64_t ell_power() const;
};

struct VerificationReport {
    uint64_t tested_count = 0; // in-range progression indices examined
    std::vector<std::pair<uint64_t, uint64_t>> violations; // (index, residue)
    uint64_t range_max = 0;
    std::vector<std::string> notes;

    bool passed() const { return violations.empty(); }
};

struct PropagationResult {
    SquareClassCongruence sq;
    std::optional<uint64_t> delta; // inverse of -24 modulo sq.modulus, if modulus >= 2
    std::vector<std::string> notes;
};

// Square-class propagation: from p(An + B) == 0 (mod ell^m) to the
// congruence p((A'n + 1)/24) == 0 on square classes, with
// A' = gcd(A, squarefree_part(A) * (24B - 1)) and one Legendre condition
// per prime dividing A'. Requires gcd(A, 6) = 1; strict additionally
// requires gcd(A, ell) = 1.
PropagationResult propagate(const RamanujanCongruence& rc, bool strict = false);

// { u^2 * t mod M : gcd(u, M) = 1 }, sorted.
std::vector<uint64_t> square_class_orbit(uint64_t M, int64_t t);

// All B' in [0, A) with 24B' - 1 == u^2 (24B - 1) mod 24A for a unit u
// mod 24A; always contains B.
std::vector<uint64_t> ramanujan_orbit(const RamanujanCongruence& rc);

struct AoExpansion {
    uint64_t modulus = 1; // A_out
    std::vector<uint64_t> residues; // B set, sorted
};

// Expand a direct-convention square-class congruence into the explicit
// arithmetic progressions it contains.
AoExpansion ao_expand(const SquareClassCongruence& sq);

VerificationReport verify_ramanujan(const series::CoeffTable& t,
                                    const RamanujanCongruence& rc);

VerificationReport verify_square_class(const series::CoeffTable& t,
                                       const SquareClassCongruence& sq);

// ell-part of the level: ell^{v_ell(N)} in integral weight,
// ell^{v_ell(lcm(4, N))} in half-integral weight.
uint64_t level_part(uint64_t N, uint64_t ell, bool half_integral);

// M = M_p * M_p_sharp with M_p = p^{v_p(M)}; requires v_p(M) <= 4.
std::pair<uint64_t, uint64_t> split_modulus(uint64_t M, uint64_t p);

struct LiftSearch {
    std::vector<uint64_t> lifts; // u in [1, p) whose progression vanishes
    uint64_t support = 0;        // indices tested per class
    std::vector<std::string> notes;
};

// Empirical search for u coprime to p such that the shifted progression
// M Z + b + u M/p vanishes mod ell_power up to the table bound.
LiftSearch search_lift(const series::CoeffTable& t, uint64_t ell_power,
                       uint64_t M, int64_t b, uint64_t p,
                       uint64_t min_support = 8);

struct RaduCheck {
    bool consistent = true;
    std::string reason;
};

// Necessary conditions for a genuine congruence p(An+B) == 0 (mod ell):
// ell | A and (24B-1 | ell) != (-1 | ell).
RaduCheck radu_filter(const RamanujanCongruence& rc);

} // namespace pcong::congruence
