#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "pcong/arith.hpp"

using namespace pcong;

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(-24, 5) == 1);
    CHECK(mod_inverse(24, 17303) == 721);
    CHECK_THROWS_AS(mod_inverse(2, 4), NonInvertible);
    for (uint64_t m : {7ull, 24ull, 120ull, 17303ull})
        for (int64_t a = 1; a < (int64_t)m; ++a)
            if (std::gcd((uint64_t)a, m) == 1)
                CHECK(mul_mod((uint64_t)a, mod_inverse(a, m), m) == 1);
}

TEST_CASE("factorize") {
    auto f = factorize(17303);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<uint64_t, uint32_t>{11, 3});
    CHECK(f.factors[1] == std::pair<uint64_t, uint32_t>{13, 1});
    CHECK(factorize(1).empty());
    auto g = factorize(5687);
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == std::pair<uint64_t, uint32_t>{11, 2});
    CHECK(g.factors[1] == std::pair<uint64_t, uint32_t>{47, 1});
}

TEST_CASE("factorize recomposition, exhaustive small + random 60-bit") {
    for (uint64_t n = 1; n <= 1000000; ++n) {
        if (factorize(n).value() != n) {
            CAPTURE(n);
            REQUIRE(false);
        }
    }
    uint64_t state = 12345;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int i = 0; i < 1000; ++i) {
        uint64_t n = (next() >> 4) | 1; // 60-bit odd
        auto f = factorize(n);
        CHECK(f.value() == n);
        for (auto [p, e] : f.factors) CHECK(is_prime(p));
    }
}

TEST_CASE("squarefree_part") {
    CHECK(squarefree_part(17303) == 143);
    CHECK(squarefree_part(1) == 1);
    CHECK(squarefree_part(12) == 6);
}

TEST_CASE("kronecker examples") {
    CHECK(kronecker(6, 13) == -1);
    CHECK(kronecker(5687, 11) == 0);
    for (int64_t n = -30; n <= 30; ++n)
        if (n != 0) CHECK(kronecker(1, n) == 1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(2, 0) == 0);
}

TEST_CASE("kronecker agrees with the Euler criterion at odd primes") {
    for (uint64_t p = 3; p <= 199; ++p) {
        if (!is_prime(p)) continue;
        for (int64_t a = 1; a < (int64_t)p; ++a) {
            uint64_t e = pow_mod((uint64_t)a, (p - 1) / 2, p);
            int expected = e == 1 ? 1 : -1;
            CHECK(kronecker(a, (int64_t)p) == expected);
        }
    }
}

TEST_CASE("hilbert symbol examples") {
    CHECK(hilbert_symbol(2, 3, 3) == -1);
    CHECK(hilbert_symbol(2, 3, 2) == -1);
    CHECK(hilbert_symbol(2, 3, INFINITE_PLACE) == 1);
    for (int64_t b = -9; b <= 9; ++b) {
        if (b == 0) continue;
        for (uint64_t p : {2ull, 3ull, 5ull, 7ull})
            CHECK(hilbert_symbol(1, b, p) == 1);
    }
}

TEST_CASE("hilbert symbol symmetry and bimultiplicativity") {
    std::vector<Rat> args;
    for (int64_t n = -12; n <= 12; ++n)
        for (int64_t d = 1; d <= 4; ++d)
            if (n != 0) args.push_back(Rat(n, d));
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull, (unsigned long long)INFINITE_PLACE}) {
        for (size_t i = 0; i < args.size(); i += 7)
            for (size_t j = 0; j < args.size(); j += 5) {
                const Rat &a = args[i], &b = args[j];
                CHECK(hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p));
                CHECK(hilbert_symbol(a, a * Rat(-1), p) == 1);
                for (size_t k = 0; k < args.size(); k += 11) {
                    const Rat& a2 = args[k];
                    CHECK(hilbert_symbol(a * a2, b, p) ==
                          hilbert_symbol(a, b, p) * hilbert_symbol(a2, b, p));
                }
            }
    }
}

TEST_CASE("hilbert product formula over all places") {
    auto product_over_places = [](const Rat& a, const Rat& b) {
        std::set<uint64_t> places = {2, 3, 5, 7, 11, 13};
        for (int64_t v : {a.num, a.den, b.num, b.den})
            for (auto [p, e] : factorize((uint64_t)std::abs(v)).factors) places.insert(p);
        int prod = hilbert_symbol(a, b, INFINITE_PLACE);
        for (uint64_t p : places) prod *= hilbert_symbol(a, b, p);
        return prod;
    };
    SUBCASE("integers") {
        for (int64_t a = -50; a <= 50; ++a) {
            if (a == 0) continue;
            for (int64_t b = -50; b <= 50; b += 3) {
                if (b == 0) continue;
                CHECK(product_over_places(Rat(a), Rat(b)) == 1);
            }
        }
    }
    SUBCASE("rationals with numerator and denominator up to 50") {
        for (int64_t an : {-49, -21, -1, 7, 15, 44})
            for (int64_t ad : {1, 2, 9, 25, 50})
                for (int64_t bn : {-50, -8, 3, 13, 27})
                    for (int64_t bd : {1, 4, 11, 45})
                        CHECK(product_over_places(Rat(an, ad), Rat(bn, bd)) == 1);
    }
}

TEST_CASE("hilbert closed form agrees with the solubility oracle") {
    // spot check here; the full |a|,|b| <= 50 sweep runs in the acceptance suite
    for (int64_t a = -12; a <= 12; ++a) {
        if (a == 0) continue;
        for (int64_t b = -12; b <= 12; ++b) {
            if (b == 0) continue;
            for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(p);
                CHECK(hilbert_symbol(a, b, p) == oracles::slow_hilbert(a, b, p));
            }
        }
    }
}

TEST_CASE("rational arithmetic") {
    CHECK(Rat(6, -4) == Rat(-3, 2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(-1, 24) * Rat(1, 5)) == Rat(-1, 120));
    CHECK(Rat(-25, 24).floor() == -2);
    CHECK(Rat(-25, 24).frac() == Rat(23, 24));
    CHECK_THROWS_AS(Rat(1, 0), Error);
}
