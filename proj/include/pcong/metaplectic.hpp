#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcong/arith.hpp"
#include "pcong/rational.hpp"

namespace pcong::mp {

// 2x2 integer matrix. Group elements have determinant 1; Hecke
// representatives (1 h; 0 M) carry determinant M.
struct Mat2 {
    int64_t a = 1, b = 0, c = 0, d = 1;

    int64_t det() const;
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    bool operator==(const Mat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_inverse(const Mat2& x); // determinant must be 1

inline Mat2 mat_s() { return {0, -1, 1, 0}; }
inline Mat2 mat_t() { return {1, 1, 0, 1}; }
inline Mat2 hecke_rep(int64_t h, int64_t M) { return {1, h, 0, M}; }

// Element of the twofold cover: a matrix together with a sign, multiplied
// through the Hilbert-symbol cocycle below.
struct MpElement {
    Mat2 mat;
    int sign = 1;
};

// Exact model of the T-eigenvector attached to a progression (M, b) and
// exponent offset alpha: one root-of-unity phase exponent per h mod M.
struct PhaseVector {
    uint64_t level = 1;                       // M
    Rat base_offset;                          // b + alpha
    std::vector<std::optional<Rat>> coeffs;   // exponent in [0,1); nullopt = 0
    int global_sign = 1;

    void validate() const;
};

PhaseVector phase_vector(uint64_t M, int64_t b, const Rat& alpha);

struct TApplication {
    PhaseVector vector;
    Rat eigen_exponent; // (b + alpha)/M mod 1
};

// Right action of T on the representatives (1 h; 0 M); wraparound at
// h = M-1 picks up the vector's own T-eigenphase. Verifies the result is
// the global phase e((b+alpha)/M) times the input and returns that
// exponent; throws EigenRelationBroken otherwise.
TApplication apply_t_action(const PhaseVector& v);

// A matrix in Gamma_0(M) congruent to diag(u, u^{-1}) mod M*N; requires
// gcd(u, MN) = 1. When additionally u == 1 mod N, the result lies in
// Gamma_0(M) n Gamma(N).
Mat2 diagonal_congruent_matrix(int64_t u, uint64_t M, uint64_t N);

struct ConjugationCheck {
    bool pass = false;
    uint64_t ubar_sq = 1;                // recovered (u^{-1})^2 mod MN
    std::array<int64_t, 4> residues{};   // entrywise defect mod MN on failure
};

// Checks (1 h; 0 M) * gamma == gamma * (1 ubar^2 h; 0 M) entrywise mod MN.
// gamma must reduce to an invertible diagonal mod MN (NotDiagonalShape).
ConjugationCheck check_diag_conjugation(const Mat2& gamma, uint64_t M,
                                        uint64_t N, uint64_t h);

struct HeckeFactorization {
    bool pass = false;
    uint32_t n = 0;        // v_p(1 + h_p)
    uint64_t h_prime = 1;  // (1 + h_p)/p^n
    std::array<int64_t, 4> residues{};
};

// Verifies, modulo MN, the two-step factorization of (1 h; 0 M) * gamma
// through a diagonal times a determinant-M/p^n representative, where gamma
// is congruent to (1 0; 1 1) mod M_p and lies in Gamma(M_p^# N). h is taken
// mod M and lifted to h_p + h_p^# with the divisibility the computation
// needs (M_p^# N | h_p, M_p N | h_p^#).
HeckeFactorization check_hecke_factorization(const Mat2& gamma, uint64_t M,
                                             uint64_t p, uint64_t N, uint64_t h);

// gamma congruent to (1 0; 1 1) mod m_p and to the identity mod rest.
Mat2 lower_unipotent_congruent(uint64_t m_p, uint64_t rest);

// x(gamma) = c if c != 0, else d. Never zero on determinant-1 matrices.
int64_t kubota_x(const Mat2& gamma);

// Place argument for kubota_cocycle: a prime, or ALL_FINITE for the product
// over the finitely many primes where either x-ratio is a non-unit.
inline constexpr uint64_t ALL_FINITE = 0;

// sigma_v(g, g') = hilbert(x(gg')/x(g), x(gg')/x(g'), v).
int kubota_cocycle(const Mat2& g1, const Mat2& g2, uint64_t place = ALL_FINITE);

MpElement mp_multiply(const MpElement& x, const MpElement& y);

struct SplittingProbe {
    uint64_t samples = 0;
    uint64_t plus_count = 0;
    uint64_t minus_count = 0;
};

// Samples pairs of words in the lower/upper unipotent generators of a
// finite-index subgroup of Gamma(4) and histograms the cocycle values.
// Reports only; asserts nothing.
SplittingProbe probe_gamma4_splitting(uint64_t sample_count, uint64_t seed);

// Seeded random determinant-1 matrix with all entries bounded by max_entry,
// generated as a word in S and T. Shared by the CLI and the test suites.
Mat2 random_sl2(uint64_t& state, int64_t max_entry);

} // namespace pcong::mp
