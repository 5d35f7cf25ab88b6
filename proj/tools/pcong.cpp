// pcong: partition-congruence toolkit. Subcommands build coefficient tables,
// verify and propagate congruences, expand square-class families into
// progressions, scan tables for new candidates, and exercise the cocycle
// machinery. Payloads are single-line JSON on stdout; diagnostics go to
// stderr. Exit codes: 0 success, 1 violation/failed check, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>

#include "pcong/congruence.hpp"
#include "pcong/json_io.hpp"
#include "pcong/metaplectic.hpp"
#include "pcong/scanner.hpp"
#include "pcong/series.hpp"

using json = nlohmann::json;
using namespace pcong;

namespace {

struct Options {
    uint64_t seed = 42;
    unsigned workers = 1;

    std::string form;
    uint64_t modulus = 0;
    uint64_t max_index = 0;
    std::string out_path;

    std::string table_path;
    std::string ramanujan_json;
    std::string square_class_json;
    bool strict = false;

    uint64_t orbit_mod = 0;
    int64_t orbit_t = 0;

    uint64_t expand_modulus = 0;
    int64_t expand_offset = 0;
    std::string conditions_json;

    uint64_t ell_power = 0;
    uint64_t a_min = 1;
    uint64_t a_max = 30;
    uint64_t min_support = 16;
    bool require_radu = false;
    bool keep_implied = false;
    std::string sq_moduli;
    std::string condition_primes;

    uint64_t samples = 1000;
    bool gamma4_probe = false;
};

json parse_json_arg(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError(std::string("malformed JSON for ") + what);
    return j;
}

std::vector<uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<uint64_t> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoull(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

void emit(const json& payload) { std::cout << payload.dump() << "\n"; }

int cmd_table(const Options& opt) {
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    series::CoeffTable t = [&] {
        if (opt.form == "partition") return series::build_partition_table(opt.modulus, opt.max_index);
        if (opt.form == "theta0") return series::build_theta_table(0, opt.modulus, opt.max_index);
        if (opt.form == "theta1") return series::build_theta_table(1, opt.modulus, opt.max_index);
        if (opt.form.rfind("eta^", 0) == 0)
            return series::build_eta_power_table(std::stoll(opt.form.substr(4)), opt.modulus,
                                                 opt.max_index);
        throw PreconditionViolated("unknown form '" + opt.form +
                                   "' (expected partition | eta^R | theta0 | theta1)");
    }();
    series::save_table(t, opt.out_path);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();
    std::cerr << "built " << t.size() << " entries in " << ms << " ms\n";
    emit({{"form", opt.form},
          {"modulus", t.modulus()},
          {"count", t.size()},
          {"entry_width", t.entry_width()},
          {"path", opt.out_path}});
    return 0;
}

int cmd_verify(const Options& opt) {
    if (opt.ramanujan_json.empty() == opt.square_class_json.empty())
        throw PreconditionViolated("provide exactly one of --ramanujan or --square-class");
    auto t = series::load_table(opt.table_path);
    congruence::VerificationReport rep;
    if (!opt.ramanujan_json.empty()) {
        auto rc = congruence::ramanujan_from_json(parse_json_arg(opt.ramanujan_json, "--ramanujan"));
        rep = congruence::verify_ramanujan(t, rc);
    } else {
        auto sq = congruence::square_class_from_json(
            parse_json_arg(opt.square_class_json, "--square-class"));
        rep = congruence::verify_square_class(t, sq);
    }
    emit(congruence::to_json(rep));
    return rep.passed() ? 0 : 1;
}

int cmd_propagate(const Options& opt) {
    auto rc = congruence::ramanujan_from_json(parse_json_arg(opt.ramanujan_json, "--ramanujan"));
    auto res = congruence::propagate(rc, opt.strict);
    json payload = {{"square_class", congruence::to_json(res.sq)}, {"notes", res.notes}};
    if (res.delta) payload["delta"] = *res.delta;
    emit(payload);
    return 0;
}

int cmd_orbit(const Options& opt) {
    if (!opt.ramanujan_json.empty()) {
        auto rc = congruence::ramanujan_from_json(parse_json_arg(opt.ramanujan_json, "--ramanujan"));
        emit({{"ramanujan", congruence::to_json(rc)},
              {"orbit", congruence::ramanujan_orbit(rc)}});
        return 0;
    }
    if (opt.orbit_mod == 0) throw PreconditionViolated("provide --mod or --ramanujan");
    emit({{"modulus", opt.orbit_mod},
          {"t", opt.orbit_t},
          {"orbit", congruence::square_class_orbit(opt.orbit_mod, opt.orbit_t)}});
    return 0;
}

int cmd_expand(const Options& opt) {
    congruence::SquareClassCongruence sq;
    if (!opt.square_class_json.empty()) {
        sq = congruence::square_class_from_json(
            parse_json_arg(opt.square_class_json, "--square-class"));
    } else {
        if (opt.expand_modulus == 0)
            throw PreconditionViolated("provide --square-class or --modulus/--offset/--conditions");
        json conds = opt.conditions_json.empty()
                         ? json::object()
                         : parse_json_arg(opt.conditions_json, "--conditions");
        // the expansion uses only the class data; ell is a placeholder here
        json wrapper = {{"ell", 5},
                        {"m", 1},
                        {"modulus", opt.expand_modulus},
                        {"convention", "direct"},
                        {"offset", opt.expand_offset},
                        {"conditions", conds}};
        sq = congruence::square_class_from_json(wrapper);
    }
    auto exp = congruence::ao_expand(sq);
    emit({{"A_out", exp.modulus}, {"B_set", exp.residues}, {"count", exp.residues.size()}});
    return 0;
}

int cmd_scan(const Options& opt) {
    auto t = series::load_table(opt.table_path);
    json candidates = json::array();
    if (!opt.sq_moduli.empty()) {
        scanner::SquareClassScanConfig cfg;
        cfg.ell_power = opt.ell_power;
        cfg.moduli = parse_u64_list(opt.sq_moduli);
        if (!opt.condition_primes.empty())
            cfg.condition_primes = parse_u64_list(opt.condition_primes);
        cfg.min_support = opt.min_support;
        cfg.workers = opt.workers;
        for (auto& hit : scanner::scan_square_class(t, cfg))
            candidates.push_back(scanner::to_json(hit));
    } else {
        scanner::ScanConfig cfg;
        cfg.ell_power = opt.ell_power;
        cfg.a_min = opt.a_min;
        cfg.a_max = opt.a_max;
        cfg.min_support = opt.min_support;
        cfg.require_radu = opt.require_radu;
        cfg.dedupe = !opt.keep_implied;
        cfg.workers = opt.workers;
        for (auto& hit : scanner::scan(t, cfg)) candidates.push_back(scanner::to_json(hit));
    }
    emit({{"candidates", candidates},
          {"table_bound", t.size() - 1},
          {"ell_power", opt.ell_power}});
    return 0;
}

int cmd_kubota(const Options& opt) {
    uint64_t state = opt.seed;
    uint64_t failures = 0;
    for (uint64_t i = 0; i < opt.samples; ++i) {
        mp::Mat2 g1 = mp::random_sl2(state, 100);
        mp::Mat2 g2 = mp::random_sl2(state, 100);
        mp::Mat2 g3 = mp::random_sl2(state, 100);
        int lhs = mp::kubota_cocycle(g1, g2) * mp::kubota_cocycle(mp::mat_mul(g1, g2), g3);
        int rhs = mp::kubota_cocycle(g2, g3) * mp::kubota_cocycle(g1, mp::mat_mul(g2, g3));
        if (lhs != rhs) ++failures;
    }

    // the two local product identities, sampled over the moduli and places
    // the congruence machinery exercises
    int prod1 = 1, prod2 = 1;
    for (uint64_t M : {25ull, 121ull * 13}) {
        const uint64_t N = 24;
        for (uint64_t u : {1ull, 25ull, 49ull}) {
            if (std::gcd(u, M * N) != 1) continue;
            auto g = mp::diagonal_congruent_matrix((int64_t)u, M, N);
            for (uint64_t p : {5ull, 11ull, 13ull}) {
                int v1 = hilbert_symbol(Rat(1), Rat(g.c), p) *
                         hilbert_symbol(Rat(-g.c), Rat(g.c), p) * hilbert_symbol(Rat(1), Rat(1), p);
                Rat c_over_m = Rat(g.c) / Rat((int64_t)M);
                int v2 = hilbert_symbol(c_over_m, Rat(1), p) *
                         hilbert_symbol(Rat(-(int64_t)M) / Rat(g.c), c_over_m, p);
                if (v1 != 1) prod1 = v1;
                if (v2 != 1) prod2 = v2;
            }
        }
    }

    json payload = {{"triples_tested", opt.samples},
                    {"identity_failures", failures},
                    {"paper_products", json::array({prod1, prod2})}};
    if (opt.gamma4_probe) {
        auto probe = mp::probe_gamma4_splitting(opt.samples, opt.seed);
        payload["gamma4_histogram"] = {{"plus", probe.plus_count}, {"minus", probe.minus_count}};
    }
    emit(payload);
    return (failures > 0 || prod1 != 1 || prod2 != 1) ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"partition congruence toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name
    app.add_option("--seed", opt.seed, "seed for all randomized subcommands")->capture_default_str();
    app.add_option("--workers", opt.workers, "worker threads for scans")->capture_default_str();

    auto* table = app.add_subcommand("table", "build a coefficient table file");
    table->add_option("--form", opt.form, "partition | eta^R | theta0 | theta1")->required();
    table->add_option("--mod", opt.modulus, "coefficient modulus (>= 2)")->required();
    table->add_option("--max-index", opt.max_index, "largest index to compute")->required();
    table->add_option("--out", opt.out_path, "output path (PTB1 format)")->required();

    auto* verify = app.add_subcommand("verify", "verify a congruence against a table");
    verify->add_option("--table", opt.table_path, "PTB1 table file")->required();
    verify->add_option("--ramanujan", opt.ramanujan_json, "congruence record JSON");
    verify->add_option("--square-class", opt.square_class_json, "square-class record JSON");

    auto* propagate = app.add_subcommand("propagate", "propagate a congruence to square classes");
    propagate->add_option("--ramanujan", opt.ramanujan_json, "congruence record JSON")->required();
    propagate->add_flag("--strict", opt.strict, "require gcd(A, ell) = 1 as well");

    auto* orbit = app.add_subcommand("orbit", "square-class orbit of a residue");
    orbit->add_option("--mod", opt.orbit_mod, "orbit modulus M");
    orbit->add_option("--t", opt.orbit_t, "residue t");
    orbit->add_option("--ramanujan", opt.ramanujan_json, "orbit of a congruence record instead");

    auto* expand = app.add_subcommand("expand", "expand a square-class family into progressions");
    expand->add_option("--square-class", opt.square_class_json, "direct-convention record JSON");
    expand->add_option("--modulus", opt.expand_modulus, "progression modulus");
    expand->add_option("--offset", opt.expand_offset, "progression offset");
    expand->add_option("--conditions", opt.conditions_json, "conditions JSON, e.g. {\"11\":-1}");

    auto* scan = app.add_subcommand("scan", "scan a table for congruence candidates");
    scan->add_option("--table", opt.table_path, "PTB1 table file")->required();
    scan->add_option("--ell-power", opt.ell_power, "prime power ell^m")->required();
    scan->add_option("--amax", opt.a_max, "largest progression modulus")->capture_default_str();
    scan->add_option("--amin", opt.a_min, "smallest progression modulus")->capture_default_str();
    scan->add_option("--min-support", opt.min_support, "minimum indices per candidate")
        ->capture_default_str();
    scan->add_flag("--require-radu", opt.require_radu, "drop candidates failing the necessary conditions");
    scan->add_flag("--keep-implied", opt.keep_implied, "keep sub-progressions of emitted hits");
    scan->add_option("--square-class-moduli", opt.sq_moduli,
                     "comma-separated moduli: scan square-class families instead");
    scan->add_option("--condition-primes", opt.condition_primes,
                     "comma-separated odd primes for square-class conditions");

    auto* kubota = app.add_subcommand("kubota", "cocycle identity sampling and product checks");
    kubota->add_option("--samples", opt.samples, "number of sampled triples")->capture_default_str();
    kubota->add_flag("--gamma4-probe", opt.gamma4_probe, "histogram cocycle values on Gamma(4) words");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (table->parsed()) return cmd_table(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (propagate->parsed()) return cmd_propagate(opt);
        if (orbit->parsed()) return cmd_orbit(opt);
        if (expand->parsed()) return cmd_expand(opt);
        if (scan->parsed()) return cmd_scan(opt);
        if (kubota->parsed()) return cmd_kubota(opt);
    } catch (const CapacityExceeded& e) {
        emit({{"error", "capacity exceeded"}, {"detail", e.what()}});
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
