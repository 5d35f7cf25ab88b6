#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

// End-to-end checks of the command line tool. The binary path comes from the
// PCONG_CLI environment variable (set by ctest); the whole suite is skipped
// when it is absent.

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* cli_path() { return std::getenv("PCONG_CLI"); }

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_tab(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("cli: table, verify, scan round trip") {
    if (!cli_path()) return;
    auto tab = temp_tab("pcong_cli_p5.tab");
    auto built = run("table --form partition --mod 5 --max-index 30000 --out " + tab.string());
    CHECK(built.exit_code == 0);
    auto payload = nlohmann::json::parse(built.out);
    CHECK(payload["count"] == 30001);
    CHECK(payload["modulus"] == 5);

    SUBCASE("max-index 0 still produces p(0) = 1") {
        auto tiny = temp_tab("pcong_cli_tiny.tab");
        auto r = run("table --form partition --mod 5 --max-index 0 --out " + tiny.string());
        CHECK(r.exit_code == 0);
        CHECK(nlohmann::json::parse(r.out)["count"] == 1);
        std::filesystem::remove(tiny);
    }
    SUBCASE("eta and theta forms build and report") {
        auto f = temp_tab("pcong_cli_forms.tab");
        for (const char* form : {"eta^-1", "eta^24", "theta0", "theta1"}) {
            auto r = run("table --form " + std::string(form) + " --mod 97 --max-index 64 --out " +
                         f.string());
            CHECK(r.exit_code == 0);
            CHECK(nlohmann::json::parse(r.out)["form"] == form);
        }
        auto bad = run("table --form zeta --mod 97 --max-index 64 --out " + f.string());
        CHECK(bad.exit_code == 2);
        std::filesystem::remove(f);
    }
    SUBCASE("missing --out is a usage error with no payload") {
        auto r = run("table --form partition --mod 5 --max-index 10");
        CHECK(r.exit_code == 2);
        CHECK(r.out.empty());
    }
    SUBCASE("verify passes and fails with the right exit codes") {
        auto good = run("verify --table " + tab.string() + " --ramanujan '{\"ell\":5,\"m\":1,\"A\":5,\"B\":4}'");
        CHECK(good.exit_code == 0);
        CHECK(nlohmann::json::parse(good.out)["violations"].empty());

        auto bad = run("verify --table " + tab.string() + " --ramanujan '{\"ell\":5,\"m\":1,\"A\":5,\"B\":3}'");
        CHECK(bad.exit_code == 1);
        auto rep = nlohmann::json::parse(bad.out);
        CHECK(rep["violations"][0][0] == 3);

        auto mismatched = run("verify --table " + tab.string() +
                              " --ramanujan '{\"ell\":7,\"m\":1,\"A\":7,\"B\":5}'");
        CHECK(mismatched.exit_code == 2);
        CHECK(mismatched.out.empty());

        auto malformed = run("verify --table " + tab.string() + " --ramanujan '{nope'");
        CHECK(malformed.exit_code == 2);
    }
    SUBCASE("scan finds the mod-5 congruence") {
        auto r = run("scan --table " + tab.string() + " --ell-power 5 --amax 12");
        CHECK(r.exit_code == 0);
        auto payload2 = nlohmann::json::parse(r.out);
        bool found = false;
        for (auto& c : payload2["candidates"])
            if (c["A"] == 5 && c["B"] == 4) found = true;
        CHECK(found);
        CHECK(payload2["table_bound"] == 30000);
    }
    std::filesystem::remove(tab);
}

TEST_CASE("cli: propagate, orbit, expand payloads") {
    if (!cli_path()) return;
    auto prop = run("propagate --ramanujan '{\"ell\":13,\"m\":1,\"A\":17303,\"B\":237}'");
    CHECK(prop.exit_code == 0);
    auto pj = nlohmann::json::parse(prop.out);
    CHECK(pj["square_class"]["modulus"] == 17303);
    CHECK(pj["square_class"]["conditions"]["11"] == 0);
    CHECK(pj["square_class"]["conditions"]["13"] == -1);
    CHECK(pj["delta"] == 16582);

    auto strict = run("propagate --strict --ramanujan '{\"ell\":13,\"m\":1,\"A\":17303,\"B\":237}'");
    CHECK(strict.exit_code == 2);
    CHECK(strict.out.empty());

    auto orb = run("orbit --mod 5 --t 1");
    CHECK(orb.exit_code == 0);
    CHECK(nlohmann::json::parse(orb.out)["orbit"] == nlohmann::json::array({1, 4}));

    auto exp = run("expand --modulus 121 --offset 721 --conditions '{\"11\":-1,\"13\":1}'");
    CHECK(exp.exit_code == 0);
    auto ej = nlohmann::json::parse(exp.out);
    CHECK(ej["A_out"] == 17303);
    CHECK(ej["count"] == 30);
    CHECK(ej["B_set"][0] == 237);
    CHECK(ej["B_set"][29] == 16935);
}

TEST_CASE("cli: kubota") {
    if (!cli_path()) return;
    auto r = run("kubota --samples 200 --seed 42");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["identity_failures"] == 0);
    CHECK(j["paper_products"] == nlohmann::json::array({1, 1}));

    auto empty = run("kubota --samples 0");
    CHECK(empty.exit_code == 0);
    CHECK(nlohmann::json::parse(empty.out)["triples_tested"] == 0);

    auto probe = run("kubota --samples 100 --seed 7 --gamma4-probe");
    CHECK(probe.exit_code == 0);
    auto jp = nlohmann::json::parse(probe.out);
    CHECK(jp.contains("gamma4_histogram"));
    CHECK(jp["gamma4_histogram"]["plus"].get<uint64_t>() +
              jp["gamma4_histogram"]["minus"].get<uint64_t>() ==
          100);
}

TEST_CASE("cli: determinism of payload bytes") {
    if (!cli_path()) return;
    auto a = run("kubota --samples 300 --seed 12345 --gamma4-probe");
    auto b = run("kubota --samples 300 --seed 12345 --gamma4-probe");
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);

    auto c = run("orbit --mod 200 --t 3");
    auto d = run("orbit --mod 200 --t 3");
    CHECK(c.out == d.out);
}

TEST_CASE("cli: scan worker invariance") {
    if (!cli_path()) return;
    auto tab = temp_tab("pcong_cli_p7.tab");
    REQUIRE(run("table --form partition --mod 7 --max-index 20000 --out " + tab.string()).exit_code == 0);
    auto w1 = run("scan --table " + tab.string() + " --ell-power 7 --amax 20");
    auto w4 = run("--workers 4 scan --table " + tab.string() + " --ell-power 7 --amax 20");
    CHECK(w1.exit_code == 0);
    CHECK(w1.out == w4.out);
    std::filesystem::remove(tab);
}
