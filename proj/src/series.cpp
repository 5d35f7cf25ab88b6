#include "pcong/series.hpp"

#include <atomic>
#include <cstring>
#include <fstream>

namespace pcong::series {

namespace {

std::atomic<uint64_t> g_memory_limit{2ull << 30};

// Generalized pentagonal exponent pairs k(3k-1)/2, k(3k+1)/2 with the
// alternating sign of the pentagonal number theorem, up to max_index.
struct PentagonalTerms {
    std::vector<uint64_t> g1, g2; // g2[i] may exceed max_index; callers bound-check
    std::vector<int> sign;
};

PentagonalTerms pentagonal_terms(uint64_t max_index) {
    PentagonalTerms t;
    for (uint64_t k = 1;; ++k) {
        uint64_t a = k * (3 * k - 1) / 2;
        if (a > max_index) break;
        t.g1.push_back(a);
        t.g2.push_back(k * (3 * k + 1) / 2);
        t.sign.push_back(k & 1 ? 1 : -1);
    }
    return t;
}

template <class T>
void partition_recurrence(std::vector<T>& p, uint64_t m) {
    const uint64_t n_max = p.size() - 1;
    const PentagonalTerms terms = pentagonal_terms(n_max);
    p[0] = (T)(1 % m);

    // Entries below this bound can be summed raw in a u64 accumulator and
    // reduced once per n instead of once per term.
    const size_t nterms = terms.g1.size() + 1;
    const bool raw_sums = m - 1 <= UINT64_MAX / (2 * nterms + 2);

    size_t live = 0; // terms.g1[i] <= n for i < live; monotone in n
    for (uint64_t n = 1; n <= n_max; ++n) {
        while (live < terms.g1.size() && terms.g1[live] <= n) ++live;
        if (raw_sums) {
            uint64_t plus = 0, minus = 0;
            for (size_t i = 0; i < live; ++i) {
                uint64_t v = p[n - terms.g1[i]];
                if (terms.g2[i] <= n) v += p[n - terms.g2[i]];
                (terms.sign[i] > 0 ? plus : minus) += v;
            }
            p[n] = (T)sub_mod(plus % m, minus % m, m);
        } else {
            uint64_t acc = 0;
            for (size_t i = 0; i < live; ++i) {
                uint64_t v = p[n - terms.g1[i]];
                if (terms.g2[i] <= n) v = add_mod(v, p[n - terms.g2[i]], m);
                acc = terms.sign[i] > 0 ? add_mod(acc, v, m) : sub_mod(acc, v, m);
            }
            p[n] = (T)acc;
        }
    }
}

// Multiply a table in place by prod (1 - q^n): sparse, O(len * sqrt(len)).
// The pentagonal coefficient of q^{g_k} is (-1)^k, the opposite of the
// recurrence sign stored in PentagonalTerms.
template <class T>
void multiply_by_euler_product(std::vector<T>& a, uint64_t m) {
    const uint64_t n_max = a.size() - 1;
    const PentagonalTerms terms = pentagonal_terms(n_max);
    for (uint64_t n = n_max;; --n) {
        uint64_t acc = a[n];
        for (size_t i = 0; i < terms.g1.size() && terms.g1[i] <= n; ++i) {
            uint64_t v = a[n - terms.g1[i]];
            if (terms.g2[i] <= n) v = add_mod(v, a[n - terms.g2[i]], m);
            acc = terms.sign[i] > 0 ? sub_mod(acc, v, m) : add_mod(acc, v, m);
        }
        a[n] = (T)acc;
        if (n == 0) break;
    }
}

void check_capacity(uint64_t count, uint32_t width) {
    if (count > g_memory_limit.load() / width)
        throw CapacityExceeded("table of " + std::to_string(count) +
                               " entries exceeds the configured memory bound");
}

template <class F>
CoeffTable build_with_width(std::string form_id, uint64_t modulus, Rat alpha,
                            uint64_t count, F&& fill) {
    CoeffTable t(std::move(form_id), modulus, alpha, count);
    t.visit([&](auto& v) { fill(v, modulus); });
    return t;
}

void put_u16(std::ofstream& os, uint16_t v) {
    uint8_t b[2] = {(uint8_t)(v & 0xff), (uint8_t)(v >> 8)};
    os.write((const char*)b, 2);
}

void put_u64(std::ofstream& os, uint64_t v) {
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = (uint8_t)(v >> (8 * i));
    os.write((const char*)b, 8);
}

uint64_t get_u64(std::ifstream& is) {
    uint8_t b[8];
    is.read((char*)b, 8);
    if (!is) throw FormatError("truncated table file");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= (uint64_t)b[i] << (8 * i);
    return v;
}

} // namespace

CoeffTable::CoeffTable(std::string form_id, uint64_t modulus, Rat alpha, uint64_t count)
    : form_id_(std::move(form_id)), modulus_(modulus), alpha_(alpha) {
    if (modulus < 2) throw PreconditionViolated("table modulus must be >= 2");
    if (count < 1) throw PreconditionViolated("table needs at least one entry");
    if (alpha.den != 1 && 24 % alpha.den != 0)
        throw PreconditionViolated("alpha denominator must divide 24");
    uint32_t w = width_for(modulus);
    check_capacity(count, w);
    switch (w) {
        case 1: store_ = std::vector<uint8_t>(count, 0); break;
        case 2: store_ = std::vector<uint16_t>(count, 0); break;
        case 4: store_ = std::vector<uint32_t>(count, 0); break;
        default: store_ = std::vector<uint64_t>(count, 0); break;
    }
}

uint32_t CoeffTable::width_for(uint64_t modulus) {
    uint64_t top = modulus - 1;
    if (top <= 0xff) return 1;
    if (top <= 0xffff) return 2;
    if (top <= 0xffffffffull) return 4;
    return 8;
}

void CoeffTable::set_memory_limit(uint64_t bytes) { g_memory_limit.store(bytes); }
uint64_t CoeffTable::memory_limit() { return g_memory_limit.load(); }

uint64_t CoeffTable::size() const {
    return visit([](const auto& v) { return (uint64_t)v.size(); });
}

uint32_t CoeffTable::entry_width() const {
    return visit([](const auto& v) {
        return (uint32_t)sizeof(typename std::decay_t<decltype(v)>::value_type);
    });
}

uint64_t CoeffTable::at(uint64_t j) const {
    return visit([&](const auto& v) { return (uint64_t)v.at(j); });
}

void CoeffTable::set(uint64_t j, uint64_t value) {
    if (value >= modulus_) throw PreconditionViolated("entry >= modulus");
    visit([&](auto& v) {
        v.at(j) = (typename std::decay_t<decltype(v)>::value_type)value;
    });
}

bool CoeffTable::operator==(const CoeffTable& o) const {
    if (modulus_ != o.modulus_ || !(alpha_ == o.alpha_) || form_id_ != o.form_id_)
        return false;
    if (size() != o.size()) return false;
    for (uint64_t j = 0; j < size(); ++j)
        if (at(j) != o.at(j)) return false;
    return true;
}

CoeffTable build_partition_table(uint64_t modulus, uint64_t max_index) {
    return build_with_width("partition%" + std::to_string(modulus), modulus,
                            Rat(-1, 24), max_index + 1, [](auto& v, uint64_t m) {
                                partition_recurrence(v, m);
                            });
}

CoeffTable build_eta_power_table(int64_t r, uint64_t modulus, uint64_t max_index) {
    if (r == 0) throw PreconditionViolated("eta power r must be nonzero");
    std::string id = "eta^" + std::to_string(r) + "%" + std::to_string(modulus);
    if (r > 0) {
        return build_with_width(std::move(id), modulus, Rat(r, 24), max_index + 1,
                                [&](auto& v, uint64_t m) {
                                    using T = typename std::decay_t<decltype(v)>::value_type;
                                    v[0] = (T)(1 % m);
                                    for (int64_t i = 0; i < r; ++i)
                                        multiply_by_euler_product(v, m);
                                });
    }
    CoeffTable pos = build_eta_power_table(-r, modulus, max_index);
    CoeffTable inv = invert_table(pos);
    inv.set_form_id(std::move(id));
    return inv;
}

CoeffTable build_theta_table(int which, uint64_t modulus, uint64_t max_index) {
    if (which != 0 && which != 1)
        throw PreconditionViolated("theta index must be 0 or 1");
    std::string id = "theta" + std::to_string(which) + "%" + std::to_string(modulus);
    Rat alpha = which == 0 ? Rat(0) : Rat(1, 4);
    CoeffTable t(std::move(id), modulus, alpha, max_index + 1);
    if (which == 0) {
        t.set(0, 1 % modulus);
        for (uint64_t n = 1; n * n <= max_index; ++n) t.set(n * n, 2 % modulus);
    } else {
        // n = m + 1/2: n^2 - 1/4 = m(m+1), counted twice (m and -m-1).
        for (uint64_t m = 0; m * (m + 1) <= max_index; ++m)
            t.set(m * (m + 1), 2 % modulus);
    }
    return t;
}

CoeffTable extract_progression(const CoeffTable& t, uint64_t M, uint64_t b) {
    if (M < 1 || b >= M) throw PreconditionViolated("need 0 <= b < M");
    uint64_t len = t.size();
    if (b >= len) throw EmptyResult("no indices of the progression are in range");
    uint64_t count = (len - 1 - b) / M + 1;
    CoeffTable out(t.form_id() + "[" + std::to_string(M) + "n+" + std::to_string(b) + "]",
                   t.modulus(), t.alpha(), count);
    for (uint64_t j = 0; j < count; ++j) out.set(j, t.at(M * j + b));
    return out;
}

CoeffTable multiply_tables(const CoeffTable& a, const CoeffTable& b) {
    if (a.modulus() != b.modulus())
        throw ModulusMismatch("cannot multiply tables with different moduli");
    uint64_t m = a.modulus();
    uint64_t len = std::min(a.size(), b.size());
    CoeffTable out("(" + a.form_id() + ")*(" + b.form_id() + ")", m,
                   a.alpha() + b.alpha(), len);
    for (uint64_t n = 0; n < len; ++n) {
        uint64_t acc = 0;
        for (uint64_t k = 0; k <= n; ++k) {
            uint64_t x = a.at(k);
            if (x == 0) continue;
            acc = add_mod(acc, mul_mod(x, b.at(n - k), m), m);
        }
        out.set(n, acc);
    }
    return out;
}

CoeffTable invert_table(const CoeffTable& a) {
    uint64_t m = a.modulus();
    uint64_t lead = a.at(0);
    uint64_t lead_inv;
    try {
        lead_inv = mod_inverse((int64_t)lead, m);
    } catch (const NonInvertible&) {
        throw NonUnitLeadingCoefficient("entry 0 is not a unit modulo the table modulus");
    }
    uint64_t len = a.size();
    CoeffTable out("inv(" + a.form_id() + ")", m, -a.alpha(), len);
    out.set(0, lead_inv);
    for (uint64_t n = 1; n < len; ++n) {
        uint64_t acc = 0;
        for (uint64_t k = 1; k <= n; ++k) {
            uint64_t x = a.at(k);
            if (x == 0) continue;
            acc = add_mod(acc, mul_mod(x, out.at(n - k), m), m);
        }
        out.set(n, mul_mod(sub_mod(0, acc, m), lead_inv, m));
    }
    return out;
}

void save_table(const CoeffTable& t, const std::filesystem::path& path) {
    if (t.form_id().size() > 255) throw FormatError("form id longer than 255 bytes");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    const uint8_t magic[4] = {0x50, 0x54, 0x42, 0x31};
    os.write((const char*)magic, 4);
    os.put((char)1);
    os.put((char)t.entry_width());
    put_u16(os, 0);
    put_u64(os, t.modulus());
    put_u64(os, (uint64_t)t.alpha().num);
    put_u64(os, (uint64_t)t.alpha().den);
    put_u64(os, t.size());
    os.put((char)t.form_id().size());
    os.write(t.form_id().data(), (std::streamsize)t.form_id().size());
    t.visit([&](const auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        std::vector<uint8_t> buf(v.size() * sizeof(T));
        for (size_t i = 0; i < v.size(); ++i) {
            uint64_t x = v[i];
            for (size_t k = 0; k < sizeof(T); ++k)
                buf[i * sizeof(T) + k] = (uint8_t)(x >> (8 * k));
        }
        os.write((const char*)buf.data(), (std::streamsize)buf.size());
    });
    if (!os) throw IoError("write failed: " + path.string());
}

CoeffTable load_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    uint8_t magic[4];
    is.read((char*)magic, 4);
    if (!is || magic[0] != 0x50 || magic[1] != 0x54 || magic[2] != 0x42 || magic[3] != 0x31)
        throw FormatError("bad magic");
    int version = is.get();
    int width = is.get();
    if (version != 1) throw FormatError("unsupported version");
    if (width != 1 && width != 2 && width != 4 && width != 8)
        throw FormatError("invalid entry width");
    uint8_t reserved[2];
    is.read((char*)reserved, 2);
    if (!is || reserved[0] != 0 || reserved[1] != 0) throw FormatError("reserved field not zero");
    uint64_t modulus = get_u64(is);
    int64_t alpha_num = (int64_t)get_u64(is);
    uint64_t alpha_den = get_u64(is);
    uint64_t count = get_u64(is);
    if (modulus < 2) throw FormatError("modulus < 2");
    if (alpha_den == 0 || alpha_den > 24) throw FormatError("bad alpha denominator");
    Rat alpha((int64_t)alpha_num, (int64_t)alpha_den);
    if (alpha.den != 1 && 24 % alpha.den != 0)
        throw FormatError("alpha denominator does not divide 24");
    if (count == 0) throw FormatError("empty table");
    int id_len = is.get();
    if (id_len < 0) throw FormatError("truncated table file");
    std::string form_id((size_t)id_len, '\0');
    is.read(form_id.data(), id_len);
    if (!is) throw FormatError("truncated table file");
    if ((uint32_t)width < CoeffTable::width_for(modulus))
        throw FormatError("entry width cannot hold modulus - 1");

    CoeffTable t(std::move(form_id), modulus, alpha, count);
    std::vector<uint8_t> buf(count * (uint64_t)width);
    is.read((char*)buf.data(), (std::streamsize)buf.size());
    if (!is) throw FormatError("truncated table file");
    for (uint64_t i = 0; i < count; ++i) {
        uint64_t x = 0;
        for (int k = 0; k < width; ++k)
            x |= (uint64_t)buf[i * (uint64_t)width + k] << (8 * k);
        if (x >= modulus) throw FormatError("entry >= modulus at index " + std::to_string(i));
        t.set(i, x);
    }
    return t;
}

} // namespace pcong::series
