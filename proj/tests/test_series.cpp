#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "oracles.hpp"
#include "pcong/series.hpp"

using namespace pcong;
using namespace pcong::series;

namespace {

struct TempFile {
    std::filesystem::path path;
    TempFile(const char* name) : path(std::filesystem::temp_directory_path() / name) {}
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

} // namespace

TEST_CASE("partition table small values") {
    auto t = build_partition_table(13, 6);
    uint64_t expected[] = {1, 1, 2, 3, 5, 7, 11};
    for (uint64_t j = 0; j <= 6; ++j) CHECK(t.at(j) == expected[j]);
    CHECK(t.alpha() == Rat(-1, 24));
    CHECK(t.entry_width() == 1);

    auto t5 = build_partition_table(5, 9);
    CHECK(t5.at(4) == 0);
    CHECK(t5.at(9) == 0);
}

TEST_CASE("partition table against the geometric-series oracle") {
    const uint64_t m = 1000000007;
    auto t = build_partition_table(m, 100);
    auto oracle = oracles::partition_geometric(100, m);
    for (uint64_t j = 0; j <= 100; ++j) CHECK(t.at(j) == oracle[j]);
    CHECK(t.at(100) == 190569292 % m);
}

TEST_CASE("partition recurrence matches direct enumeration") {
    for (uint64_t m : {2ull, 5ull, 13ull, 625ull}) {
        auto t = build_partition_table(m, 60);
        for (uint32_t n = 0; n <= 60; ++n)
            CHECK(t.at(n) == oracles::partition_direct_count(n) % m);
    }
}

TEST_CASE("eta powers") {
    SUBCASE("eta^-1 is the partition table") {
        auto a = build_eta_power_table(-1, 13, 500);
        auto b = build_partition_table(13, 500);
        CHECK(a.alpha() == b.alpha());
        for (uint64_t j = 0; j <= 500; ++j) CHECK(a.at(j) == b.at(j));
    }
    SUBCASE("eta^24 leading coefficients") {
        auto t = build_eta_power_table(24, 1000000, 2);
        CHECK(t.at(0) == 1);
        CHECK(t.at(1) == 1000000 - 24);
        CHECK(t.at(2) == 252);
        CHECK(t.alpha() == Rat(1));
    }
    SUBCASE("eta^1 is the pentagonal series") {
        auto t = build_eta_power_table(1, 97, 5);
        uint64_t expected[] = {1, 96, 96, 0, 0, 1};
        for (uint64_t j = 0; j <= 5; ++j) CHECK(t.at(j) == expected[j]);
    }
    SUBCASE("eta^a * eta^b = eta^{a+b}") {
        for (auto [a, b] : {std::pair{1, 1}, {2, 3}, {-1, 3}, {-2, -1}}) {
            auto ta = build_eta_power_table(a, 101, 127);
            auto tb = build_eta_power_table(b, 101, 127);
            auto prod = multiply_tables(ta, tb);
            auto direct = build_eta_power_table(a + b, 101, 127);
            CHECK(prod.alpha() == direct.alpha());
            for (uint64_t j = 0; j < 128; ++j) CHECK(prod.at(j) == direct.at(j));
        }
    }
}

TEST_CASE("theta tables") {
    auto t0 = build_theta_table(0, 97, 16);
    uint64_t expected[] = {1, 2, 0, 0, 2};
    for (uint64_t j = 0; j <= 4; ++j) CHECK(t0.at(j) == expected[j]);
    CHECK(t0.at(9) == 2);
    CHECK(t0.at(16) == 2);
    CHECK(t0.alpha() == Rat(0));

    auto t1 = build_theta_table(1, 97, 16);
    CHECK(t1.at(0) == 2);
    CHECK(t1.at(1) == 0);
    CHECK(t1.at(2) == 2);
    CHECK(t1.at(6) == 2);
    CHECK(t1.alpha() == Rat(1, 4));
}

TEST_CASE("extract_progression") {
    auto t = build_partition_table(5, 1000);
    auto sliced = extract_progression(t, 5, 4);
    for (uint64_t j = 0; j < sliced.size(); ++j) CHECK(sliced.at(j) == 0);
    CHECK(sliced.size() == 200);

    auto t7 = build_partition_table(7, 1000);
    auto s7 = extract_progression(t7, 7, 5);
    for (uint64_t j = 0; j < s7.size(); ++j) CHECK(s7.at(j) == 0);

    SUBCASE("identity slice") {
        auto id = extract_progression(t, 1, 0);
        CHECK(id.size() == t.size());
        for (uint64_t j = 0; j < t.size(); ++j) CHECK(id.at(j) == t.at(j));
    }
    SUBCASE("composition") {
        auto a = extract_progression(extract_progression(t, 3, 1), 5, 2);
        auto b = extract_progression(t, 15, 1 + 3 * 2);
        CHECK(a.size() == b.size());
        for (uint64_t j = 0; j < a.size(); ++j) CHECK(a.at(j) == b.at(j));
    }
    SUBCASE("out of range") {
        auto tiny = build_partition_table(5, 2);
        CHECK_THROWS_AS(extract_progression(tiny, 7, 5), EmptyResult);
        CHECK_THROWS_AS(extract_progression(tiny, 7, 9), PreconditionViolated);
    }
}

TEST_CASE("multiply and invert") {
    SUBCASE("eta * eta^-1 = 1") {
        auto a = build_eta_power_table(1, 13, 100);
        auto b = build_eta_power_table(-1, 13, 100);
        auto prod = multiply_tables(a, b);
        CHECK(prod.at(0) == 1);
        for (uint64_t j = 1; j <= 100; ++j) CHECK(prod.at(j) == 0);
        CHECK(prod.alpha() == Rat(0));
    }
    SUBCASE("invert(eta^24) = eta^-24") {
        auto inv = invert_table(build_eta_power_table(24, 625, 64));
        auto direct = build_eta_power_table(-24, 625, 64);
        for (uint64_t j = 0; j <= 64; ++j) CHECK(inv.at(j) == direct.at(j));
        CHECK(inv.alpha() == direct.alpha());
    }
    SUBCASE("length-1 product") {
        CoeffTable a("a", 7, Rat(0), 1), b("b", 7, Rat(0), 1);
        a.set(0, 3);
        b.set(0, 5);
        auto p = multiply_tables(a, b);
        CHECK(p.size() == 1);
        CHECK(p.at(0) == 1);
    }
    SUBCASE("invert(a) * a = 1 for random unit-leading tables") {
        uint64_t state = 99;
        auto next = [&]() {
            state ^= state << 13; state ^= state >> 7; state ^= state << 17;
            return state;
        };
        for (int trial = 0; trial < 50; ++trial) {
            uint64_t m = 2 + next() % 100000;
            CoeffTable a("rng", m, Rat(0), 64);
            uint64_t lead;
            do { lead = next() % m; } while (std::gcd(lead, m) != 1);
            a.set(0, lead);
            for (uint64_t j = 1; j < 64; ++j) a.set(j, next() % m);
            auto prod = multiply_tables(invert_table(a), a);
            CHECK(prod.at(0) == 1);
            for (uint64_t j = 1; j < 64; ++j) CHECK(prod.at(j) == 0);
        }
    }
    SUBCASE("errors") {
        CoeffTable a("a", 7, Rat(0), 4), b("b", 11, Rat(0), 4);
        CHECK_THROWS_AS(multiply_tables(a, b), ModulusMismatch);
        CoeffTable c("c", 10, Rat(0), 4);
        c.set(0, 5);
        CHECK_THROWS_AS(invert_table(c), NonUnitLeadingCoefficient);
    }
}

TEST_CASE("table file round trip") {
    TempFile f("pcong_test_roundtrip.tab");
    for (uint64_t m : {251ull, 65521ull, 1000000007ull, 1ull << 40}) {
        auto t = build_partition_table(m, 300);
        save_table(t, f.path);
        auto back = load_table(f.path);
        CHECK(back == t);
    }
    auto theta = build_theta_table(1, 9973, 50);
    save_table(theta, f.path);
    CHECK(load_table(f.path) == theta);
}

TEST_CASE("table file rejects corruption") {
    TempFile f("pcong_test_corrupt.tab");
    auto t = build_partition_table(251, 64);
    save_table(t, f.path);

    auto patch = [&](std::streamoff pos, uint8_t byte) {
        std::fstream s(f.path, std::ios::in | std::ios::out | std::ios::binary);
        s.seekp(pos);
        s.put((char)byte);
    };

    SUBCASE("bad magic") {
        patch(0, 'X');
        CHECK_THROWS_AS(load_table(f.path), FormatError);
    }
    SUBCASE("bad version") {
        patch(4, 9);
        CHECK_THROWS_AS(load_table(f.path), FormatError);
    }
    SUBCASE("entry >= modulus") {
        // last byte of the payload is the final 1-byte entry
        auto size = std::filesystem::file_size(f.path);
        patch((std::streamoff)size - 1, 0xfe);
        CHECK_THROWS_AS(load_table(f.path), FormatError);
    }
    SUBCASE("truncation") {
        std::filesystem::resize_file(f.path, std::filesystem::file_size(f.path) - 5);
        CHECK_THROWS_AS(load_table(f.path), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_table("/nonexistent/nowhere.tab"), IoError);
    }
}

TEST_CASE("entry width policy") {
    CHECK(CoeffTable::width_for(2) == 1);
    CHECK(CoeffTable::width_for(256) == 1);
    CHECK(CoeffTable::width_for(257) == 2);
    CHECK(CoeffTable::width_for(65537) == 4);
    CHECK(CoeffTable::width_for((uint64_t)1 << 33) == 8);
}

TEST_CASE("capacity bound") {
    uint64_t saved = CoeffTable::memory_limit();
    CoeffTable::set_memory_limit(1024);
    CHECK_THROWS_AS(build_partition_table(13, 5000), CapacityExceeded);
    CoeffTable::set_memory_limit(saved);
}
