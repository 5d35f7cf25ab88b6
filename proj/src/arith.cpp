#include "pcong/arith.hpp"

#include <algorithm>
#include <numeric>

namespace pcong {

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t r = a + b;
    if (r < a || r >= m) r -= m;
    return r;
}

uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t reduce_mod(int64_t a, uint64_t m) {
    int64_t r = a % (int64_t)m;
    if (r < 0) r += (int64_t)m;
    return (uint64_t)r;
}

uint64_t mod_inverse(int64_t a, uint64_t m) {
    if (m < 2) throw NonInvertible("modulus must be >= 2");
    int64_t r0 = (int64_t)m, r1 = (int64_t)reduce_mod(a, m);
    int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        t0 -= q * t1; std::swap(t0, t1);
    }
    if (r0 != 1)
        throw NonInvertible("gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
    if (t0 < 0) t0 += (int64_t)m;
    return (uint64_t)t0;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set is deterministic below 2^64.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t Factorization::value() const {
    uint64_t v = 1;
    for (auto [p, e] : factors)
        for (uint32_t i = 0; i < e; ++i) v *= p;
    return v;
}

uint32_t Factorization::exponent_of(uint64_t p) const {
    for (auto [q, e] : factors)
        if (q == p) return e;
    return 0;
}

namespace {

uint64_t rho_step(uint64_t x, uint64_t c, uint64_t n) {
    return add_mod(mul_mod(x, x, n), c, n);
}

// Brent's variant of Pollard rho; n must be odd, composite, not a prime power
// caught earlier. Always returns a nontrivial factor.
uint64_t pollard_brent(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        uint64_t q = 1, ys = y;
        const uint64_t batch = 64;
        for (uint64_t r = 1; d == 1; r <<= 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = rho_step(y, c, n);
            for (uint64_t k = 0; k < r && d == 1; k += batch) {
                ys = y;
                uint64_t lim = std::min(batch, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = rho_step(y, c, n);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
        }
        if (d == n) {
            // Batch gcd overshot; replay one step at a time.
            do {
                ys = rho_step(ys, c, n);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

Factorization factorize(uint64_t n) {
    if (n == 0) throw PreconditionViolated("factorize(0)");
    Factorization f;
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { primes.push_back(p); n /= p; }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (uint64_t p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

uint64_t squarefree_part(uint64_t n) {
    uint64_t r = 1;
    for (auto [p, e] : factorize(n).factors) r *= p;
    return r;
}

uint32_t valuation(uint64_t n, uint64_t p) {
    if (n == 0 || p < 2) throw PreconditionViolated("valuation needs n > 0, p >= 2");
    uint32_t v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if ((n & 1) == 0) {
        if ((a & 1) == 0) return 0;
        int v = 0;
        while ((n & 1) == 0) { n >>= 1; ++v; }
        int64_t a8 = ((a % 8) + 8) % 8;
        if ((v & 1) && (a8 == 3 || a8 == 5)) result = -result;
    }
    // n now odd and positive: Jacobi via quadratic reciprocity.
    uint64_t un = (uint64_t)n;
    uint64_t ua = reduce_mod(a, un);
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            uint64_t n8 = un % 8;
            if (n8 == 3 || n8 == 5) result = -result;
        }
        std::swap(ua, un);
        if ((ua % 4 == 3) && (un % 4 == 3)) result = -result;
        ua %= un;
    }
    return un == 1 ? result : 0;
}

namespace {

// Valuation of a nonzero rational at p.
int rat_valuation(const Rat& a, uint64_t p) {
    int v = 0;
    uint64_t n = (uint64_t)(a.num < 0 ? -a.num : a.num);
    uint64_t d = (uint64_t)a.den;
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

// Residue of the p-unit part of a, modulo m (m a power of p times nothing
// else; in practice p or 8). Sign is carried into the residue.
uint64_t unit_part_mod(const Rat& a, uint64_t p, uint64_t m) {
    int64_t n = a.num, d = a.den;
    uint64_t an = (uint64_t)(n < 0 ? -n : n);
    uint64_t ad = (uint64_t)d;
    while (an % p == 0) an /= p;
    while (ad % p == 0) ad /= p;
    uint64_t rn = an % m;
    if (n < 0) rn = (m - rn) % m;
    uint64_t rd = ad % m;
    return mul_mod(rn, mod_inverse((int64_t)rd, m), m);
}

} // namespace

int hilbert_symbol(const Rat& a, const Rat& b, uint64_t place) {
    if (a.is_zero() || b.is_zero())
        throw PreconditionViolated("hilbert symbol of zero");
    if (place == INFINITE_PLACE)
        return (a.negative() && b.negative()) ? -1 : 1;
    if (place == 2) {
        int alpha = rat_valuation(a, 2);
        int beta = rat_valuation(b, 2);
        uint64_t u8 = unit_part_mod(a, 2, 8);
        uint64_t v8 = unit_part_mod(b, 2, 8);
        // eps(x) = (x-1)/2 mod 2, omega(x) = (x^2-1)/8 mod 2 on odd units.
        int eu = (u8 % 4 == 3) ? 1 : 0;
        int ev = (v8 % 4 == 3) ? 1 : 0;
        int wu = (u8 == 3 || u8 == 5) ? 1 : 0;
        int wv = (v8 == 3 || v8 == 5) ? 1 : 0;
        int e = eu * ev + (alpha & 1) * wv + (beta & 1) * wu;
        return (e & 1) ? -1 : 1;
    }
    if (!is_prime(place))
        throw PreconditionViolated("hilbert place must be prime or INFINITE_PLACE");
    int alpha = rat_valuation(a, place);
    int beta = rat_valuation(b, place);
    int s = 1;
    if ((alpha & 1) && (beta & 1) && (((place - 1) / 2) & 1)) s = -s;
    if (beta & 1) s *= kronecker((int64_t)unit_part_mod(a, place, place), (int64_t)place);
    if (alpha & 1) s *= kronecker((int64_t)unit_part_mod(b, place, place), (int64_t)place);
    return s;
}

int hilbert_symbol(int64_t a, int64_t b, uint64_t place) {
    return hilbert_symbol(Rat(a), Rat(b), place);
}

} // namespace pcong
