#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "pcong/arith.hpp"
#include "pcong/rational.hpp"

namespace pcong::series {

// Residue table of q-series coefficients: entry j holds the coefficient of
// exponent j + alpha, reduced into [0, modulus). Entries are stored at the
// smallest of 1/2/4/8 bytes that holds modulus - 1, in memory and on disk.
class CoeffTable {
public:
    using Store = std::variant<std::vector<uint8_t>, std::vector<uint16_t>,
                               std::vector<uint32_t>, std::vector<uint64_t>>;

    CoeffTable(std::string form_id, uint64_t modulus, Rat alpha, uint64_t count);

    static uint32_t width_for(uint64_t modulus);

    // Bound (bytes of entry storage) above which builders throw
    // CapacityExceeded. Default 2 GiB.
    static void set_memory_limit(uint64_t bytes);
    static uint64_t memory_limit();

    const std::string& form_id() const { return form_id_; }
    uint64_t modulus() const { return modulus_; }
    const Rat& alpha() const { return alpha_; }
    uint64_t size() const;
    uint32_t entry_width() const;

    uint64_t at(uint64_t j) const;
    void set(uint64_t j, uint64_t value);

    void set_form_id(std::string id) { form_id_ = std::move(id); }

    template <class F> decltype(auto) visit(F&& f) const {
        return std::visit(std::forward<F>(f), store_);
    }
    template <class F> decltype(auto) visit(F&& f) {
        return std::visit(std::forward<F>(f), store_);
    }

    bool operator==(const CoeffTable& o) const;

private:
    std::string form_id_;
    uint64_t modulus_;
    Rat alpha_;
    Store store_;
};

// p(j) mod modulus for j = 0..max_index via the pentagonal-number recurrence;
// alpha = -1/24.
CoeffTable build_partition_table(uint64_t modulus, uint64_t max_index);

// Coefficients of prod_{n>=1} (1 - q^n)^r mod modulus, alpha = r/24.
// Negative r goes through power-series inversion.
CoeffTable build_eta_power_table(int64_t r, uint64_t modulus, uint64_t max_index);

// which = 0: counts of n in Z with n^2 = j, alpha = 0.
// which = 1: counts of n in 1/2 + Z with n^2 = j + 1/4, alpha = 1/4.
CoeffTable build_theta_table(int which, uint64_t modulus, uint64_t max_index);

// Entries t[M*j + b]; alpha is carried over unchanged, the slice (M, b) is
// recorded in the form id. The weight-dependent scalar of the underlying
// coefficient identity is intentionally not applied (it is a unit modulo any
// ell coprime to M).
CoeffTable extract_progression(const CoeffTable& t, uint64_t M, uint64_t b);

// Truncated Cauchy product to the shorter length; alphas add.
CoeffTable multiply_tables(const CoeffTable& a, const CoeffTable& b);

// Power-series inverse; entry 0 must be a unit mod modulus; alpha negates.
CoeffTable invert_table(const CoeffTable& a);

// PTB1 binary format (little-endian): magic "PTB1", u8 version = 1,
// u8 entry_width, u16 reserved = 0, u64 modulus, i64 alpha_numerator,
// u64 alpha_denominator, u64 entry_count, u8 form_id_length, form_id bytes,
// then entry_count fixed-width entries. Readers reject any entry >= modulus.
void save_table(const CoeffTable& t, const std::filesystem::path& path);
CoeffTable load_table(const std::filesystem::path& path);

} // namespace pcong::series
