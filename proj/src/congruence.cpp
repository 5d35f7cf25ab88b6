#include "pcong/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pcong::congruence {

namespace {

uint64_t checked_ell_power(uint64_t ell, uint32_t m) {
    unsigned __int128 v = 1;
    for (uint32_t i = 0; i < m; ++i) {
        v *= ell;
        if (v > UINT64_MAX) throw Overflow("ell^m does not fit 64 bits");
    }
    return (uint64_t)v;
}

// 24*B - 1 reduced mod m, overflow-safe for any 64-bit B.
uint64_t shifted_b_mod(uint64_t B, uint64_t m) {
    return sub_mod(mul_mod(24 % m, B % m, m), 1 % m, m);
}

int kron_of_shifted_b(uint64_t B, uint64_t p) {
    // (24B - 1 | p) for odd prime p only depends on 24B - 1 mod p.
    return kronecker((int64_t)shifted_b_mod(B, p), (int64_t)p);
}

} // namespace

void RamanujanCongruence::validate() const {
    if (!is_prime(ell)) throw PreconditionViolated("ell must be prime");
    if (m < 1) throw PreconditionViolated("m must be positive");
    if (A < 1) throw PreconditionViolated("A must be positive");
    if (B >= A) throw PreconditionViolated("need 0 <= B < A");
}

uint64_t RamanujanCongruence::ell_power() const { return checked_ell_power(ell, m); }

bool sign_cond_matches(SignCond c, int symbol) {
    switch (c) {
        case SignCond::Minus: return symbol == -1;
        case SignCond::Zero: return symbol == 0;
        case SignCond::Plus: return symbol == 1;
        case SignCond::ZeroOrMinus: return symbol == 0 || symbol == -1;
        case SignCond::ZeroOrPlus: return symbol == 0 || symbol == 1;
    }
    return false;
}

std::string sign_cond_str(SignCond c) {
    switch (c) {
        case SignCond::Minus: return "-1";
        case SignCond::Zero: return "0";
        case SignCond::Plus: return "+1";
        case SignCond::ZeroOrMinus: return "{0,-1}";
        case SignCond::ZeroOrPlus: return "{0,+1}";
    }
    return "?";
}

void SquareClassCongruence::validate() const {
    if (!is_prime(ell)) throw PreconditionViolated("ell must be prime");
    if (m < 1) throw PreconditionViolated("m must be positive");
    if (modulus < 1) throw PreconditionViolated("modulus must be positive");
    for (auto& [p, c] : conditions) {
        if (!is_prime(p)) throw PreconditionViolated("condition key must be prime");
        if (modulus % p != 0 && convention == OffsetConvention::Scaled24)
            throw PreconditionViolated("condition prime must divide the modulus");
    }
}

uint64_t SquareClassCongruence::ell_power() const { return checked_ell_power(ell, m); }

PropagationResult propagate(const RamanujanCongruence& rc, bool strict) {
    rc.validate();
    if (std::gcd(rc.A, (uint64_t)6) != 1)
        throw PreconditionViolated("propagation requires gcd(A, 6) = 1");
    if (strict && rc.A % rc.ell == 0)
        throw PreconditionViolated(
            "strict mode: gcd(A, ell) != 1; the propagation hypothesis asks for A "
            "co-prime to 6*ell, yet known congruence families have ell | A "
            "(a genuine congruence forces it) - rerun without strict to proceed");
    if (rc.A > (uint64_t)(INT64_MAX / 24))
        throw PreconditionViolated("A too large for exact 24B - 1 arithmetic");

    PropagationResult out;
    uint64_t a_sf = squarefree_part(rc.A);
    // gcd(A, A_sf * (24B - 1)) without forming the full product:
    // gcd(A, x) = gcd(A, x mod A).
    uint64_t prod_mod_a = mul_mod(a_sf % rc.A, shifted_b_mod(rc.B, rc.A), rc.A);
    uint64_t a_prime = std::gcd(rc.A, prod_mod_a);

    out.sq.ell = rc.ell;
    out.sq.m = rc.m;
    out.sq.modulus = a_prime;
    out.sq.convention = OffsetConvention::Scaled24;
    out.sq.offset = 1;
    for (auto [p, e] : factorize(a_prime).factors) {
        int s = kron_of_shifted_b(rc.B, p);
        out.sq.conditions[p] = s < 0 ? SignCond::Minus : (s > 0 ? SignCond::Plus : SignCond::Zero);
    }
    if (a_prime >= 2) {
        out.delta = mod_inverse(-24, a_prime);
        out.notes.push_back("delta_" + std::to_string(a_prime) + "=" +
                            std::to_string(*out.delta));
    } else {
        out.notes.push_back("modulus 1: congruence is vacuous on all n == -1 mod 24");
    }
    if (rc.A % rc.ell == 0)
        out.notes.push_back("ell | A: outside the stated co-primality hypothesis, "
                            "as in every known genuine family");
    for (auto& [p, cond] : out.sq.conditions) {
        if (cond == SignCond::Zero) {
            out.notes.push_back("zero-sign conditions keep only divisibility by the "
                                "condition prime; the emitted family can be strictly "
                                "larger than the verified one at such primes");
            break;
        }
    }
    return out;
}

std::vector<uint64_t> square_class_orbit(uint64_t M, int64_t t) {
    if (M < 1) throw PreconditionViolated("M must be positive");
    uint64_t t0 = reduce_mod(t, M);
    std::set<uint64_t> orbit;
    for (uint64_t u = 1; u <= M; ++u) {
        if (std::gcd(u, M) != 1) continue;
        orbit.insert(mul_mod(mul_mod(u, u, M), t0, M));
    }
    if (M == 1) orbit.insert(0);
    return {orbit.begin(), orbit.end()};
}

std::vector<uint64_t> ramanujan_orbit(const RamanujanCongruence& rc) {
    rc.validate();
    if (rc.A == 1) return {0};
    if (rc.A > UINT64_MAX / 24) throw Overflow("24A does not fit 64 bits");
    uint64_t mod24a = 24 * rc.A;
    uint64_t c = shifted_b_mod(rc.B, mod24a);
    std::set<uint64_t> out;
    for (uint64_t u = 1; u < mod24a; ++u) {
        if (std::gcd(u, mod24a) != 1) continue;
        uint64_t x = mul_mod(mul_mod(u, u, mod24a), c, mod24a);
        // u coprime to 24 forces u^2 == 1 mod 24, so x == -1 mod 24.
        out.insert(((x + 1) / 24) % rc.A);
    }
    return {out.begin(), out.end()};
}

AoExpansion ao_expand(const SquareClassCongruence& sq) {
    sq.validate();
    if (sq.convention != OffsetConvention::Direct)
        throw PreconditionViolated("ao_expand needs the direct offset convention");
    uint64_t class_mod = 1; // product of all condition primes, each once
    for (auto& [p, c] : sq.conditions) {
        if (p == 2)
            throw ConditionPrimeNotCoprime("condition primes must be odd");
        if (class_mod > UINT64_MAX / p) throw Overflow("condition prime product overflow");
        class_mod *= p;
    }
    if (sq.modulus > UINT64_MAX / class_mod) throw Overflow("expanded modulus overflow");
    AoExpansion out;
    out.modulus = sq.modulus * class_mod;
    std::set<uint64_t> bs;
    for (uint64_t nu = 0; nu < class_mod; ++nu) {
        bool ok = true;
        for (auto& [p, c] : sq.conditions) {
            if (!sign_cond_matches(c, kronecker((int64_t)(nu % p), (int64_t)p))) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        __int128 b = (__int128)sq.modulus * nu + sq.offset;
        __int128 r = b % (__int128)out.modulus;
        if (r < 0) r += out.modulus;
        bs.insert((uint64_t)r);
    }
    out.residues.assign(bs.begin(), bs.end());
    return out;
}

VerificationReport verify_ramanujan(const series::CoeffTable& t,
                                    const RamanujanCongruence& rc) {
    rc.validate();
    uint64_t lp = rc.ell_power();
    if (t.modulus() % lp != 0)
        throw ModulusIncompatible("table modulus is not divisible by ell^m");
    VerificationReport rep;
    rep.range_max = t.size() - 1;
    for (uint64_t idx = rc.B; idx <= rep.range_max; idx += rc.A) {
        ++rep.tested_count;
        uint64_t r = t.at(idx) % lp;
        if (r != 0) rep.violations.push_back({idx, r});
    }
    rep.notes.push_back("progression " + std::to_string(rc.A) + "n+" + std::to_string(rc.B) +
                        " tested to index " + std::to_string(rep.range_max) +
                        " mod " + std::to_string(lp));
    if (rc.ell < 5)
        rep.notes.push_back("ell < 5: outside the scope of the square-class theory");
    return rep;
}

VerificationReport verify_square_class(const series::CoeffTable& t,
                                       const SquareClassCongruence& sq) {
    sq.validate();
    uint64_t lp = sq.ell_power();
    if (t.modulus() % lp != 0)
        throw ModulusIncompatible("table modulus is not divisible by ell^m");
    VerificationReport rep;
    rep.range_max = t.size() - 1;
    uint64_t checked = 0;

    auto test_index = [&](int64_t n, uint64_t idx) {
        ++rep.tested_count;
        bool all = true;
        for (auto& [p, c] : sq.conditions) {
            int s = kronecker(n % (int64_t)p, (int64_t)p);
            if (!sign_cond_matches(c, s)) { all = false; break; }
        }
        if (!all) return;
        ++checked;
        uint64_t r = t.at(idx) % lp;
        if (r != 0) rep.violations.push_back({idx, r});
    };

    // smallest n with a*n + c >= 0, for a > 0
    auto first_nonnegative = [](int64_t a, int64_t c) {
        int64_t q = -c / a;
        if (-c % a != 0 && -c > 0) ++q;
        return q;
    };

    if (sq.convention == OffsetConvention::Direct) {
        // indices modulus*nu + offset, conditions on nu
        for (int64_t nu = first_nonnegative((int64_t)sq.modulus, sq.offset);; ++nu) {
            __int128 idx = (__int128)sq.modulus * nu + sq.offset;
            if (idx > (__int128)rep.range_max) break;
            test_index(nu, (uint64_t)idx);
        }
    } else {
        // indices (modulus*n + offset)/24, conditions on n; n runs over the
        // single class solving modulus*n + offset == 0 mod 24
        uint64_t g = std::gcd(sq.modulus, (uint64_t)24);
        uint64_t off24 = reduce_mod(-sq.offset, 24);
        if (off24 % g != 0) {
            rep.notes.push_back("no index satisfies modulus*n + offset == 0 mod 24");
        } else {
            int64_t step = (int64_t)(24 / g);
            uint64_t a0 = (sq.modulus / g) % (uint64_t)step;
            int64_t n0 = step == 1 ? 0
                                   : (int64_t)mul_mod(mod_inverse((int64_t)a0, (uint64_t)step),
                                                      (off24 / g) % (uint64_t)step, (uint64_t)step);
            int64_t n_min = first_nonnegative((int64_t)sq.modulus, sq.offset);
            int64_t n = n_min + (((n0 - n_min) % step + step) % step);
            for (;; n += step) {
                __int128 num = (__int128)sq.modulus * n + sq.offset;
                if (num < 0) continue;
                __int128 idx = num / 24;
                if (idx > (__int128)rep.range_max) break;
                test_index(n, (uint64_t)idx);
            }
        }
        if (sq.modulus % sq.ell == 0)
            rep.notes.push_back("ell divides the progression modulus: the dropped "
                                "normalizing scalar is not a unit mod ell^m");
    }
    rep.notes.push_back("condition_satisfying=" + std::to_string(checked));
    rep.notes.push_back("table_bound=" + std::to_string(rep.range_max));
    if (sq.ell < 5)
        rep.notes.push_back("ell < 5: outside the scope of the square-class theory");
    return rep;
}

uint64_t level_part(uint64_t N, uint64_t ell, bool half_integral) {
    if (N < 1 || !is_prime(ell)) throw PreconditionViolated("level_part needs N >= 1, ell prime");
    uint64_t n_star = half_integral ? std::lcm(N, (uint64_t)4) : N;
    uint64_t r = 1;
    while (n_star % ell == 0) { n_star /= ell; r *= ell; }
    return r;
}

std::pair<uint64_t, uint64_t> split_modulus(uint64_t M, uint64_t p) {
    if (M < 1 || !is_prime(p)) throw PreconditionViolated("split_modulus needs M >= 1, p prime");
    uint32_t v = 0;
    uint64_t mp = 1, rest = M;
    while (rest % p == 0) { rest /= p; mp *= p; ++v; }
    if (v > 4) throw ExponentTooLarge("v_p(M) = " + std::to_string(v) + " > 4");
    return {mp, rest};
}

LiftSearch search_lift(const series::CoeffTable& t, uint64_t ell_power,
                       uint64_t M, int64_t b, uint64_t p, uint64_t min_support) {
    if (!is_prime(p) || M % p != 0)
        throw PreconditionViolated("search_lift needs a prime p dividing M");
    uint64_t mp = 1;
    for (uint64_t m = M; m % p == 0; m /= p) mp *= p;
    if (reduce_mod(b, mp) != 0)
        throw PreconditionViolated("b must be divisible by M_p = p^{v_p(M)}");
    if (t.modulus() % ell_power != 0)
        throw ModulusIncompatible("table modulus is not divisible by ell_power");

    LiftSearch out;
    const uint64_t range = t.size() - 1;
    const uint64_t step = M / p;

    auto first_index = [&](uint64_t u) {
        int64_t start = b + (int64_t)(u * step);
        int64_t n0 = 0;
        if (start < 0) n0 = (-start + (int64_t)M - 1) / (int64_t)M;
        return (__int128)M * n0 + start;
    };

    // testable support is a property of the table bound, checked up front
    out.support = UINT64_MAX;
    for (uint64_t u = 1; u < p; ++u) {
        __int128 lo = first_index(u);
        uint64_t testable = lo > (__int128)range ? 0
                                                 : (uint64_t)(((__int128)range - lo) / M + 1);
        out.support = std::min(out.support, testable);
    }
    if (out.support < min_support)
        throw InsufficientSupport("fewer than " + std::to_string(min_support) +
                                  " indices testable per class");

    for (uint64_t u = 1; u < p; ++u) {
        bool all_zero = true;
        for (__int128 idx = first_index(u); idx <= (__int128)range; idx += M) {
            if (t.at((uint64_t)idx) % ell_power != 0) { all_zero = false; break; }
        }
        if (all_zero) out.lifts.push_back(u);
    }
    out.notes.push_back("table_bound=" + std::to_string(range));
    out.notes.push_back("support=" + std::to_string(out.support));
    return out;
}

RaduCheck radu_filter(const RamanujanCongruence& rc) {
    rc.validate();
    RaduCheck out;
    if (rc.A % rc.ell != 0) {
        out.consistent = false;
        out.reason = "ell does not divide A";
        return out;
    }
    if (rc.ell >= 3) {
        int lhs = kron_of_shifted_b(rc.B, rc.ell);
        int rhs = kronecker(-1, (int64_t)rc.ell);
        if (lhs == rhs) {
            out.consistent = false;
            out.reason = "(24B-1 | ell) equals (-1 | ell)";
        }
    }
    return out;
}

} // namespace pcong::congruence
