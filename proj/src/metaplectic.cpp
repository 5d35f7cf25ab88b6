#include "pcong/metaplectic.hpp"

#include <numeric>
#include <set>

namespace pcong::mp {

namespace {

int64_t checked_i64(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw Overflow(what);
    return (int64_t)v;
}

int64_t mod_mn(__int128 v, uint64_t mn) {
    __int128 r = v % (__int128)mn;
    if (r < 0) r += mn;
    return (int64_t)r;
}

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

int64_t Mat2::det() const {
    return checked_i64((__int128)a * d - (__int128)b * c, "matrix determinant overflow");
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    Mat2 r;
    r.a = checked_i64((__int128)x.a * y.a + (__int128)x.b * y.c, "matrix product overflow");
    r.b = checked_i64((__int128)x.a * y.b + (__int128)x.b * y.d, "matrix product overflow");
    r.c = checked_i64((__int128)x.c * y.a + (__int128)x.d * y.c, "matrix product overflow");
    r.d = checked_i64((__int128)x.c * y.b + (__int128)x.d * y.d, "matrix product overflow");
    return r;
}

Mat2 mat_inverse(const Mat2& x) {
    if (x.det() != 1) throw PreconditionViolated("inverse needs determinant 1");
    return {x.d, -x.b, -x.c, x.a};
}

void PhaseVector::validate() const {
    if (level < 1 || coeffs.size() != level)
        throw PreconditionViolated("phase vector needs one coefficient per h mod M");
    bool any = false;
    for (const auto& c : coeffs) {
        if (!c) continue;
        any = true;
        if (c->num < 0 || !(*c < Rat(1)))
            throw PreconditionViolated("phase exponent must lie in [0,1)");
        if (((__int128)24 * level) % c->den != 0)
            throw PreconditionViolated("phase exponent denominator must divide 24*M");
    }
    if (!any) throw PreconditionViolated("phase vector must have a nonzero coefficient");
}

PhaseVector phase_vector(uint64_t M, int64_t b, const Rat& alpha) {
    if (M < 1) throw PreconditionViolated("M must be positive");
    if (alpha.den != 1 && 24 % alpha.den != 0)
        throw PreconditionViolated("alpha denominator must divide 24");
    PhaseVector v;
    v.level = M;
    v.base_offset = Rat(b) + alpha;
    v.coeffs.resize(M);
    for (uint64_t h = 0; h < M; ++h) {
        Rat e = (v.base_offset * Rat(-(int64_t)h, (int64_t)M)).frac();
        v.coeffs[h] = e;
    }
    v.validate();
    return v;
}

TApplication apply_t_action(const PhaseVector& v) {
    v.validate();
    const uint64_t M = v.level;
    Rat alpha_mod1 = v.base_offset.frac(); // e(alpha) only matters mod 1

    PhaseVector w = v;
    // (1 h; 0 M) T = (1 h+1; 0 M); at h = M-1 the representative wraps to
    // T * (1 0; 0 M), pulling the T-eigenphase of the underlying vector out.
    for (uint64_t h = 0; h < M; ++h) {
        uint64_t src = (h + M - 1) % M;
        if (!v.coeffs[src]) { w.coeffs[h] = std::nullopt; continue; }
        Rat e = *v.coeffs[src];
        if (h == 0) e = (e + alpha_mod1).frac();
        w.coeffs[h] = e;
    }

    Rat shift = (v.base_offset * Rat(1, (int64_t)M)).frac();
    for (uint64_t h = 0; h < M; ++h) {
        if ((bool)v.coeffs[h] != (bool)w.coeffs[h])
            throw EigenRelationBroken("zero pattern changed under T");
        if (!v.coeffs[h]) continue;
        if (!(( *v.coeffs[h] + shift).frac() == *w.coeffs[h]))
            throw EigenRelationBroken("transformed vector is not a phase multiple at h = " +
                                      std::to_string(h));
    }
    return {std::move(w), shift};
}

Mat2 diagonal_congruent_matrix(int64_t u, uint64_t M, uint64_t N) {
    if (M < 1 || N < 1) throw PreconditionViolated("M, N must be positive");
    if (M > (uint64_t)INT64_MAX / N) throw Overflow("M*N overflow");
    uint64_t mn = M * N;
    if (mn > 2000000) throw Overflow("M*N too large for the (MN)^2 construction");
    if (std::gcd(reduce_mod(u, mn), mn) != 1)
        throw PreconditionViolated("u must be co-prime to M*N");
    if (mn == 1) return {1, 0, 1, 1};

    uint64_t mn2 = mn * mn;
    int64_t a = (int64_t)reduce_mod(u, mn);
    int64_t d = (int64_t)mod_inverse(a, mn2);
    __int128 ad = (__int128)a * d;
    int64_t b = checked_i64((ad - 1) / (__int128)mn, "diagonal construction overflow");
    Mat2 g{a, b, (int64_t)mn, d};
    if (g.det() != 1) throw Error("diagonal construction lost determinant 1");
    return g;
}

ConjugationCheck check_diag_conjugation(const Mat2& gamma, uint64_t M, uint64_t N,
                                        uint64_t h) {
    if (gamma.det() != 1) throw PreconditionViolated("gamma must have determinant 1");
    if (M > (uint64_t)INT64_MAX / N) throw Overflow("M*N overflow");
    uint64_t mn = M * N;
    if (mod_mn(gamma.b, mn) != 0 || mod_mn(gamma.c, mn) != 0)
        throw NotDiagonalShape("gamma is not diagonal mod M*N");
    uint64_t ur = (uint64_t)mod_mn(gamma.a, mn);
    uint64_t dr = (uint64_t)mod_mn(gamma.d, mn);
    if (mul_mod(ur, dr, mn) != 1 % mn)
        throw NotDiagonalShape("diagonal of gamma is not a unit pair mod M*N");

    ConjugationCheck out;
    out.ubar_sq = mul_mod(dr, dr, mn);
    Mat2 lhs = mat_mul(hecke_rep((int64_t)h, (int64_t)M), gamma);
    Mat2 rhs = mat_mul(gamma, hecke_rep((int64_t)mul_mod(out.ubar_sq, h % mn, mn), (int64_t)M));
    out.residues = {mod_mn((__int128)lhs.a - rhs.a, mn), mod_mn((__int128)lhs.b - rhs.b, mn),
                    mod_mn((__int128)lhs.c - rhs.c, mn), mod_mn((__int128)lhs.d - rhs.d, mn)};
    out.pass = out.residues[0] == 0 && out.residues[1] == 0 && out.residues[2] == 0 &&
               out.residues[3] == 0;
    return out;
}

Mat2 lower_unipotent_congruent(uint64_t m_p, uint64_t rest) {
    if (std::gcd(m_p, rest) != 1)
        throw PreconditionViolated("moduli of the congruent pieces must be co-prime");
    // c == 1 mod m_p, c == 0 mod rest
    uint64_t mod = m_p * rest;
    uint64_t c = rest % m_p == 0 ? 1 : mul_mod(rest % mod, mod_inverse((int64_t)(rest % m_p), m_p), mod);
    if (m_p == 1) c = 0;
    return {1, 0, (int64_t)c, 1};
}

HeckeFactorization check_hecke_factorization(const Mat2& gamma, uint64_t M, uint64_t p,
                                             uint64_t N, uint64_t h) {
    if (!is_prime(p) || M % p != 0)
        throw PreconditionViolated("p must be a prime dividing M");
    uint64_t m_p = 1, m_sharp = M;
    while (m_sharp % p == 0) { m_sharp /= p; m_p *= p; }
    if (m_p > p * p * p * p) throw ExponentTooLarge("v_p(M) > 4");
    if (std::gcd(M, N) != 1)
        throw PreconditionViolated("M and N must be co-prime");
    if (M > (uint64_t)INT64_MAX / N) throw Overflow("M*N overflow");
    uint64_t mn = M * N;
    uint64_t rest = m_sharp * N;

    // gamma == (1 0; 1 1) mod M_p and gamma in Gamma(M_p^# N)
    if (mod_mn(gamma.a - 1, m_p) != 0 || mod_mn(gamma.b, m_p) != 0 ||
        mod_mn(gamma.c - 1, m_p) != 0 || mod_mn(gamma.d - 1, m_p) != 0)
        throw PreconditionViolated("gamma is not congruent to the lower unipotent mod M_p");
    if (mod_mn(gamma.a - 1, rest) != 0 || mod_mn(gamma.b, rest) != 0 ||
        mod_mn(gamma.c, rest) != 0 || mod_mn(gamma.d - 1, rest) != 0)
        throw PreconditionViolated("gamma does not lie in the principal congruence group");

    // h_p == h mod M_p, divisible by M_p^# N; h_p^# == h mod M_p^#, divisible by M_p N.
    uint64_t h_p = m_p == 1 ? 0
                            : mul_mod(mul_mod(h % m_p, rest % mn, mn),
                                      mod_inverse((int64_t)(rest % m_p), m_p), mn);
    uint64_t h_sharp_mod = m_sharp == 1 ? 0
                                        : mul_mod(mul_mod(h % m_sharp, (m_p * N) % mn, mn),
                                                  mod_inverse((int64_t)((m_p * N) % m_sharp), m_sharp), mn);
    uint64_t h_full = add_mod(h_p, h_sharp_mod, mn);

    HeckeFactorization out;
    uint64_t one_plus = h_p + 1;
    out.n = 0;
    uint64_t hp = one_plus;
    while (hp % p == 0) { hp /= p; ++out.n; }
    out.h_prime = hp;
    uint64_t pn = one_plus / hp;
    uint64_t h_bar = mod_inverse((int64_t)(hp % mn), mn);

    // chain: (1 h; 0 M) gamma == (1+h_p, h; 0, M) == diag(h', hbar') *
    //        (p^n, hbar' h; 0, h' M), all mod MN
    Mat2 lhs = mat_mul(hecke_rep((int64_t)h_full, (int64_t)M), gamma);
    Mat2 mid{(int64_t)one_plus, (int64_t)h_full, 0, (int64_t)M};
    Mat2 rhs = mat_mul(Mat2{(int64_t)hp, 0, 0, (int64_t)h_bar},
                       Mat2{(int64_t)pn, (int64_t)mul_mod(h_bar, h_full, mn), 0,
                            checked_i64((__int128)hp * M, "factorization overflow")});

    auto defect = [&](const Mat2& x, const Mat2& y) {
        return std::array<int64_t, 4>{mod_mn((__int128)x.a - y.a, mn), mod_mn((__int128)x.b - y.b, mn),
                                      mod_mn((__int128)x.c - y.c, mn), mod_mn((__int128)x.d - y.d, mn)};
    };
    auto zero = [](const std::array<int64_t, 4>& r) {
        return r[0] == 0 && r[1] == 0 && r[2] == 0 && r[3] == 0;
    };
    auto d1 = defect(lhs, mid);
    auto d2 = defect(mid, rhs);
    out.pass = zero(d1) && zero(d2);
    out.residues = zero(d1) ? d2 : d1;
    return out;
}

int64_t kubota_x(const Mat2& gamma) {
    return gamma.c != 0 ? gamma.c : gamma.d;
}

int kubota_cocycle(const Mat2& g1, const Mat2& g2, uint64_t place) {
    if (g1.det() != 1 || g2.det() != 1)
        throw PreconditionViolated("cocycle arguments must have determinant 1");
    Mat2 g12 = mat_mul(g1, g2);
    Rat r1 = Rat(kubota_x(g12)) / Rat(kubota_x(g1));
    Rat r2 = Rat(kubota_x(g12)) / Rat(kubota_x(g2));
    if (place != ALL_FINITE) return hilbert_symbol(r1, r2, place);

    // (u, v)_2 can be -1 even on 2-adic units, so 2 is always included;
    // odd places contribute only where an argument is a non-unit.
    std::set<uint64_t> places = {2};
    for (const Rat* r : {&r1, &r2}) {
        for (int64_t v : {r->num, r->den}) {
            uint64_t n = (uint64_t)(v < 0 ? -v : v);
            for (auto [q, e] : factorize(n).factors) places.insert(q);
        }
    }
    int s = 1;
    for (uint64_t q : places) s *= hilbert_symbol(r1, r2, q);
    return s;
}

MpElement mp_multiply(const MpElement& x, const MpElement& y) {
    return {mat_mul(x.mat, y.mat), x.sign * y.sign * kubota_cocycle(x.mat, y.mat, ALL_FINITE)};
}

Mat2 random_sl2(uint64_t& state, int64_t max_entry) {
    const Mat2 gens[3] = {mat_t(), mat_inverse(mat_t()), mat_s()};
    for (;;) {
        Mat2 m;
        uint64_t len = 1 + splitmix64(state) % 12;
        bool ok = true;
        for (uint64_t i = 0; i < len && ok; ++i) {
            m = mat_mul(m, gens[splitmix64(state) % 3]);
            ok = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)}) <= max_entry;
        }
        if (ok) return m;
    }
}

SplittingProbe probe_gamma4_splitting(uint64_t sample_count, uint64_t seed) {
    SplittingProbe out;
    const Mat2 up{1, 4, 0, 1}, lo{1, 0, 4, 1};
    const Mat2 gens[4] = {up, mat_inverse(up), lo, mat_inverse(lo)};
    uint64_t state = seed;
    auto sample = [&]() {
        for (;;) {
            Mat2 m;
            uint64_t len = 1 + splitmix64(state) % 8;
            bool ok = true;
            for (uint64_t i = 0; i < len && ok; ++i) {
                m = mat_mul(m, gens[splitmix64(state) % 4]);
                ok = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)}) <=
                     1000000;
            }
            if (ok) return m;
        }
    };
    for (uint64_t i = 0; i < sample_count; ++i) {
        int v = kubota_cocycle(sample(), sample(), ALL_FINITE);
        ++(v > 0 ? out.plus_count : out.minus_count);
        ++out.samples;
    }
    return out;
}

} // namespace pcong::mp
