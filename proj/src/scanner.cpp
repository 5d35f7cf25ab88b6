#include "pcong/scanner.hpp"

#include <algorithm>
#include <thread>

namespace pcong::scanner {

namespace {

std::pair<uint64_t, uint32_t> split_prime_power(uint64_t ell_power) {
    if (ell_power < 2) throw PreconditionViolated("ell_power must be >= 2");
    auto f = factorize(ell_power);
    if (f.factors.size() != 1)
        throw PreconditionViolated("ell_power must be a prime power");
    return f.factors[0];
}

// One worker's share of the (A, B) grid, sharded by A.
template <class T>
void scan_worker(const std::vector<T>& entries, uint64_t ell_power,
                 const ScanConfig& cfg, unsigned worker, std::vector<ScanHit>& out,
                 uint64_t ell, uint32_t m) {
    const uint64_t len = entries.size();
    for (uint64_t A = cfg.a_min; A <= cfg.a_max; ++A) {
        if (cfg.workers > 1 && (A - cfg.a_min) % cfg.workers != worker) continue;
        for (uint64_t B = 0; B < A; ++B) {
            if (B >= len) break;
            // the overwhelming majority of candidates die in the first probes
            if (entries[B] % ell_power != 0) continue;
            if (A + B < len && entries[A + B] % ell_power != 0) continue;
            if (2 * A + B < len && entries[2 * A + B] % ell_power != 0) continue;
            uint64_t support = 0;
            bool all_zero = true;
            for (uint64_t idx = B; idx < len; idx += A) {
                ++support;
                if (entries[idx] % ell_power != 0) { all_zero = false; break; }
            }
            if (!all_zero || support < cfg.min_support) continue;
            ScanHit hit;
            hit.rc = {ell, m, A, B};
            hit.support = support;
            hit.radu_flagged = !congruence::radu_filter(hit.rc).consistent;
            if (cfg.require_radu && hit.radu_flagged) continue;
            out.push_back(hit);
        }
    }
}

} // namespace

std::vector<ScanHit> scan(const series::CoeffTable& t, const ScanConfig& cfg) {
    auto [ell, m] = split_prime_power(cfg.ell_power);
    if (t.modulus() % cfg.ell_power != 0)
        throw ModulusIncompatible("table modulus is not divisible by ell_power");
    if (cfg.a_min < 1 || cfg.a_min > cfg.a_max || cfg.min_support < 1)
        throw PreconditionViolated("bad scan configuration");

    unsigned workers = std::max(1u, cfg.workers);
    std::vector<std::vector<ScanHit>> shards(workers);
    t.visit([&](const auto& entries) {
        if (workers == 1) {
            scan_worker(entries, cfg.ell_power, cfg, 0, shards[0], ell, m);
            return;
        }
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { scan_worker(entries, cfg.ell_power, cfg, w, shards[w], ell, m); });
        for (auto& th : pool) th.join();
    });

    std::vector<ScanHit> merged;
    for (auto& s : shards) merged.insert(merged.end(), s.begin(), s.end());
    std::sort(merged.begin(), merged.end(), [](const ScanHit& x, const ScanHit& y) {
        return x.rc.A != y.rc.A ? x.rc.A < y.rc.A : x.rc.B < y.rc.B;
    });

    std::vector<ScanHit> out;
    for (auto& hit : merged) {
        if (cfg.dedupe) {
            bool implied = false;
            for (const auto& kept : out) {
                if (hit.rc.A % kept.rc.A == 0 && hit.rc.B % kept.rc.A == kept.rc.B) {
                    implied = true;
                    break;
                }
            }
            if (implied) continue;
        }
        // noise guarantee: everything emitted re-verifies cleanly
        if (!congruence::verify_ramanujan(t, hit.rc).passed()) continue;
        out.push_back(hit);
    }
    return out;
}

std::vector<SquareClassHit> scan_square_class(const series::CoeffTable& t,
                                              const SquareClassScanConfig& cfg) {
    auto [ell, m] = split_prime_power(cfg.ell_power);
    if (t.modulus() % cfg.ell_power != 0)
        throw ModulusIncompatible("table modulus is not divisible by ell_power");
    const size_t k = cfg.condition_primes.size();
    if (k > 6) throw PreconditionViolated("too many condition primes");
    for (uint64_t p : cfg.condition_primes)
        if (!is_prime(p) || p == 2)
            throw ConditionPrimeNotCoprime("condition primes must be odd primes");

    size_t assignments = 1;
    for (size_t i = 0; i < k; ++i) assignments *= 3;
    auto cond_of = [&](size_t code, size_t i) {
        for (size_t j = 0; j < i; ++j) code /= 3;
        switch (code % 3) {
            case 0: return congruence::SignCond::Minus;
            case 1: return congruence::SignCond::Zero;
            default: return congruence::SignCond::Plus;
        }
    };

    const uint64_t range = t.size() - 1;
    std::vector<SquareClassHit> out;
    for (uint64_t modulus : cfg.moduli) {
        if (modulus < 1) throw PreconditionViolated("modulus must be positive");
        uint64_t span = modulus;
        for (uint64_t p : cfg.condition_primes) {
            if (span > UINT64_MAX / p) throw Overflow("offset span overflow");
            span *= p;
        }

        auto scan_offset = [&](uint64_t offset, std::vector<SquareClassHit>& sink) {
            std::vector<uint64_t> support(assignments, 0);
            std::vector<uint8_t> alive(assignments, 1);
            size_t alive_count = assignments;
            for (uint64_t nu = 0;; ++nu) {
                unsigned __int128 idx = (unsigned __int128)modulus * nu + offset;
                if (idx > range) break;
                size_t profile = 0, base = 1;
                for (size_t i = 0; i < k; ++i) {
                    int s = kronecker((int64_t)(nu % cfg.condition_primes[i]),
                                      (int64_t)cfg.condition_primes[i]);
                    profile += base * (size_t)(s + 1);
                    base *= 3;
                }
                if (!alive[profile]) continue;
                ++support[profile];
                if (t.at((uint64_t)idx) % cfg.ell_power != 0) {
                    alive[profile] = 0;
                    if (--alive_count == 0) break;
                }
            }
            for (size_t code = 0; code < assignments; ++code) {
                if (!alive[code] || support[code] < cfg.min_support) continue;
                SquareClassHit hit;
                hit.sq.ell = ell;
                hit.sq.m = m;
                hit.sq.modulus = modulus;
                hit.sq.convention = congruence::OffsetConvention::Direct;
                hit.sq.offset = (int64_t)offset;
                for (size_t i = 0; i < k; ++i)
                    hit.sq.conditions[cfg.condition_primes[i]] = cond_of(code, i);
                hit.support = support[code];
                sink.push_back(hit);
            }
        };

        uint64_t offset_end = std::min(span, range + 1);
        unsigned workers = std::max(1u, cfg.workers);
        if (workers == 1) {
            for (uint64_t offset = 0; offset < offset_end; ++offset) scan_offset(offset, out);
        } else {
            // shard by offset; stitching shard outputs back in offset order
            // keeps the result identical to a single-worker run
            std::vector<std::vector<SquareClassHit>> shards(workers);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (uint64_t offset = w; offset < offset_end; offset += workers)
                        scan_offset(offset, shards[w]);
                });
            for (auto& th : pool) th.join();
            std::vector<size_t> cursor(workers, 0);
            for (uint64_t offset = 0; offset < offset_end; ++offset) {
                auto& shard = shards[offset % workers];
                size_t& c = cursor[offset % workers];
                while (c < shard.size() && (uint64_t)shard[c].sq.offset == offset)
                    out.push_back(shard[c++]);
            }
        }
    }
    return out;
}

} // namespace pcong::scanner
