#include "hwl/primes.hpp"

#include "hwl/errors.hpp"
#include "hwl/gallagher.hpp"
#include "hwl/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace hwl {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr std::array<std::uint8_t, 30> kWheel30 = [] {
    std::array<std::uint8_t, 30> w{};
    for (int r = 0; r < 30; ++r) w[r] = (r % 2 != 0 && r % 3 != 0 && r % 5 != 0) ? 1 : 0;
    return w;
}();

std::vector<u64> small_primes(u64 limit) {
    std::vector<std::uint8_t> composite(limit + 1, 0);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 k = i * i; k <= limit; k += i) composite[k] = 1;
    }
    return out;
}

// Sieves [seg_lo, seg_lo + len) into flags (1 = prime).
void sieve_segment(u64 seg_lo, u64 len, const std::vector<u64>& base,
                   std::vector<std::uint8_t>& flags) {
    flags.resize(len);
    const u64 phase = seg_lo % 30;
    for (u64 i = 0; i < len; ++i) flags[i] = kWheel30[(phase + i) % 30];
    for (u64 p : base) {
        if (p < 7) continue;
        const u128 sq = static_cast<u128>(p) * p;
        if (sq >= static_cast<u128>(seg_lo) + len) break;
        u64 start = std::max<u64>(static_cast<u64>(sq), (seg_lo + p - 1) / p * p);
        for (u64 m = start - seg_lo; m < len; m += p) flags[m] = 0;
    }
    for (u64 small : {u64{2}, u64{3}, u64{5}}) {
        if (small >= seg_lo && small - seg_lo < len) flags[small - seg_lo] = 1;
    }
    if (seg_lo <= 1) {
        for (u64 m = seg_lo; m <= 1 && m - seg_lo < len; ++m) flags[m - seg_lo] = 0;
    }
}

// Bits [start, start + 64) of a bitset whose bit 0 is integer 0; out-of-range
// positions read as zero.
u64 extract64(std::span<const u64> words, std::int64_t start) {
    const std::int64_t total = static_cast<std::int64_t>(words.size()) * 64;
    if (start >= total || start <= -64) return 0;
    if (start < 0) {
        return words[0] << static_cast<unsigned>(-start);
    }
    const auto w = static_cast<std::size_t>(start / 64);
    const unsigned s = static_cast<unsigned>(start % 64);
    u64 lo = words[w] >> s;
    if (s != 0 && w + 1 < words.size()) lo |= words[w + 1] << (64 - s);
    return lo;
}

mpz_class binomial(u64 n, u64 r) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, r);
    return out;
}

void put_le64(std::ostream& out, u64 v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

u64 get_le64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), 8);
    if (!in) throw ParseError("prime table cache: truncated header");
    u64 v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace

PrimeTable::PrimeTable(u64 lo, u64 hi, std::vector<u64> bits)
    : lo_(lo), hi_(hi), bits_(std::move(bits)) {
    if (hi < lo) throw ConfigError("prime table: hi < lo");
    if (bits_.size() != (size() + 63) / 64) throw ConfigError("prime table: bitset size mismatch");
}

bool PrimeTable::is_prime(u64 m) const {
    if (!contains(m)) throw ConfigError("prime table: query outside [lo, hi]");
    const u64 i = m - lo_;
    return (bits_[i / 64] >> (i % 64)) & 1u;
}

u64 PrimeTable::count() const {
    u64 c = 0;
    for (u64 w : bits_) c += static_cast<u64>(std::popcount(w));
    return c;
}

std::vector<u64> PrimeTable::primes() const {
    std::vector<u64> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        u64 word = bits_[w];
        while (word) {
            const int b = std::countr_zero(word);
            out.push_back(lo_ + w * 64 + static_cast<u64>(b));
            word &= word - 1;
        }
    }
    return out;
}

PrimeTable PrimeTable::concat(const PrimeTable& a, const PrimeTable& b) {
    if (a.hi_ + 1 != b.lo_) throw ConfigError("prime table concat: tables are not adjacent");
    const u64 n = a.size() + b.size();
    std::vector<u64> bits((n + 63) / 64, 0);
    auto set = [&](u64 i) { bits[i / 64] |= u64{1} << (i % 64); };
    for (u64 p : a.primes()) set(p - a.lo_);
    for (u64 p : b.primes()) set(p - a.lo_);
    return PrimeTable(a.lo_, b.hi_, std::move(bits));
}

std::vector<u64> primes_up_to(u64 limit) {
    if (limit < 2) return {};
    if (limit <= (u64{1} << 16)) return small_primes(limit);
    const PrimeTable t = sieve_range(0, limit);
    return t.primes();
}

PrimeTable sieve_range(u64 lo, u64 hi, int threads) {
    if (hi < lo) throw ConfigError("sieve_range: hi < lo");
    const std::vector<u64> base = primes_up_to(isqrt(hi));
    const u64 n = hi - lo + 1;
    std::vector<u64> bits((n + 63) / 64, 0);
    const u64 segments = (n + kSieveSegment - 1) / kSieveSegment;
    // Segment boundaries are multiples of 64 bits from lo, so workers never
    // share a word.
    parallel_for(segments, threads, [&](std::size_t s) {
        const u64 off = static_cast<u64>(s) * kSieveSegment;
        const u64 len = std::min<u64>(kSieveSegment, n - off);
        std::vector<std::uint8_t> flags;
        sieve_segment(lo + off, len, base, flags);
        for (u64 i = 0; i < len; ++i) {
            if (flags[i]) bits[(off + i) / 64] |= u64{1} << ((off + i) % 64);
        }
    });
    return PrimeTable(lo, hi, std::move(bits));
}

u64 window_width(double y) {
    if (!(y > 0) || !std::isfinite(y)) throw ConfigError("window length y must be positive");
    return static_cast<u64>(std::ceil(y));
}

WindowSeries window_counts(u64 N, double y, int threads) {
    if (N < 2) throw ConfigError("window_counts: N must be at least 2");
    window_width(y);
    return window_counts(sieve_range(0, N, threads), N, y, threads);
}

WindowSeries window_counts(const PrimeTable& table, u64 N, double y, int threads) {
    const u64 w = window_width(y);
    if (table.lo() != 0 || table.hi() < N) throw ConfigError("window_counts: table must cover [0, N]");
    WindowSeries out;
    out.N = N;
    out.y = y;
    out.width = w;
    out.counts.assign(N + 1, 0);
    const auto words = table.words();
    auto bit = [&](u64 m) -> unsigned { return (words[m / 64] >> (m % 64)) & 1u; };

    const u64 chunk = kSieveSegment;
    const u64 chunks = (N + chunk) / chunk;
    parallel_for(chunks, threads, [&](std::size_t ci) {
        const u64 begin = std::max<u64>(1, static_cast<u64>(ci) * chunk);
        const u64 end = std::min<u64>(N, static_cast<u64>(ci + 1) * chunk - 1);
        if (begin > end) return;
        unsigned c = 0;
        const u64 first_lo = begin + 1 > w ? begin + 1 - w : 0;
        for (u64 m = first_lo; m <= begin; ++m) c += bit(m);
        out.counts[begin] = static_cast<std::uint16_t>(c);
        for (u64 n = begin + 1; n <= end; ++n) {
            c += bit(n);
            if (n >= w) c -= bit(n - w);
            out.counts[n] = static_cast<std::uint16_t>(c);
        }
    });
    return out;
}

mpz_class window_moment(u64 N, double y, unsigned j) {
    return window_moment(window_counts(N, y), j);
}

mpz_class window_moment(const WindowSeries& series, unsigned j) {
    std::vector<u64> hist;
    for (u64 n = 1; n <= series.N; ++n) {
        const auto c = series.counts[n];
        if (c >= hist.size()) hist.resize(c + 1, 0);
        ++hist[c];
    }
    mpz_class total = 0;
    for (std::size_t c = 0; c < hist.size(); ++c) {
        if (hist[c] == 0) continue;
        mpz_class term;
        mpz_ui_pow_ui(term.get_mpz_t(), c, j);
        total += term * mpz_class(static_cast<unsigned long>(hist[c]));
    }
    return total;
}

void validate_offsets(std::span<const u64> d) {
    if (d.empty()) throw ConfigError("tuple offsets must be non-empty");
    if (d[0] == 0) throw ConfigError("tuple offsets must be positive");
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i] <= d[i - 1]) throw ConfigError("tuple offsets must be strictly increasing");
    }
}

u64 tuple_count(u64 N, std::span<const u64> d) {
    validate_offsets(d);
    if (N < 1) throw ConfigError("tuple_count: N must be at least 1");
    return tuple_count(sieve_range(0, N), N, d);
}

u64 tuple_count(const PrimeTable& table, u64 N, std::span<const u64> d) {
    validate_offsets(d);
    if (table.lo() != 0 || table.hi() < N) throw ConfigError("tuple_count: table must cover [0, N]");
    const auto words = table.words();
    u64 total = 0;
    for (u64 n0 = 0; n0 <= N; n0 += 64) {
        u64 acc = ~u64{0};
        for (u64 off : d) {
            acc &= extract64(words, static_cast<std::int64_t>(n0) - static_cast<std::int64_t>(off));
            if (!acc) break;
        }
        if (N - n0 < 63) acc &= (u64{1} << (N - n0 + 1)) - 1;
        total += static_cast<u64>(std::popcount(acc));
    }
    return total;
}

IdentityReport moment_identity_check(u64 N, double y, unsigned j, int threads) {
    if (j < 1 || j > 3) throw ConfigError("moment_identity_check: j must be 1, 2 or 3");
    if (N < 2 || N > 10'000'000) throw ConfigError("moment_identity_check: N must lie in [2, 10^7]");
    const PrimeTable table = sieve_range(0, N + 1, threads);
    const WindowSeries series = window_counts(table, N, y, threads);

    IdentityReport rep;
    rep.N = N;
    rep.y = y;
    rep.j = j;
    rep.max_offset = series.width;
    rep.lhs = window_moment(series, j);

    std::vector<u64> hist;
    for (u64 n = 1; n <= N; ++n) {
        if (series.counts[n] >= hist.size()) hist.resize(series.counts[n] + 1, 0);
        ++hist[series.counts[n]];
    }

    rep.rhs = 0;
    for (unsigned r = 1; r <= j; ++r) {
        const mpz_class sigma = surjections(j, r);
        mpz_class chooses = 0;
        for (std::size_t c = r; c < hist.size(); ++c) {
            chooses += binomial(c, r) * mpz_class(static_cast<unsigned long>(hist[c]));
        }
        rep.lhs_by_r.push_back(sigma * chooses);

        std::vector<std::vector<u64>> tuples;
        std::vector<u64> cur;
        auto gen = [&](auto&& self, u64 next) -> void {
            if (cur.size() == r) {
                tuples.push_back(cur);
                return;
            }
            for (u64 d = next; d <= series.width; ++d) {
                cur.push_back(d);
                self(self, d + 1);
                cur.pop_back();
            }
        };
        gen(gen, 1);
        std::vector<u64> counts(tuples.size(), 0);
        parallel_for(tuples.size(), threads,
                     [&](std::size_t t) { counts[t] = tuple_count(table, N + 1, tuples[t]); });
        mpz_class sum = 0;
        for (u64 c : counts) sum += mpz_class(static_cast<unsigned long>(c));
        rep.rhs_by_r.push_back(sigma * sum);
        rep.rhs += rep.rhs_by_r.back();
    }
    rep.equal = rep.lhs == rep.rhs;
    rep.first_mismatch_r = 0;
    for (unsigned r = 1; r <= j; ++r) {
        if (rep.lhs_by_r[r - 1] != rep.rhs_by_r[r - 1]) {
            rep.first_mismatch_r = r;
            rep.equal = false;
            break;
        }
    }
    return rep;
}

void write_prime_table(std::ostream& out, const PrimeTable& table) {
    out.write("HWL1", 4);
    put_le64(out, table.lo());
    put_le64(out, table.hi());
    const u64 nbytes = (table.size() + 7) / 8;
    std::vector<char> buf(nbytes);
    const auto words = table.words();
    for (u64 b = 0; b < nbytes; ++b) {
        buf[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("prime table cache: write failed");
}

PrimeTable read_prime_table(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), 4);
    if (!in || std::string(magic.data(), 4) != "HWL1") throw ParseError("prime table cache: bad magic");
    const u64 lo = get_le64(in);
    const u64 hi = get_le64(in);
    if (hi < lo) throw ParseError("prime table cache: hi < lo");
    const u64 n = hi - lo + 1;
    const u64 nbytes = (n + 7) / 8;
    std::vector<unsigned char> buf(nbytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(nbytes));
    if (!in) throw ParseError("prime table cache: truncated bitset");
    std::vector<u64> bits((n + 63) / 64, 0);
    for (u64 b = 0; b < nbytes; ++b) bits[b / 8] |= static_cast<u64>(buf[b]) << (8 * (b % 8));
    if (n % 64 != 0) bits.back() &= (u64{1} << (n % 64)) - 1;
    return PrimeTable(lo, hi, std::move(bits));
}

void save_prime_table(const std::string& path, const PrimeTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_prime_table(out, table);
}

PrimeTable load_prime_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return read_prime_table(in);
}

void write_window_csv(std::ostream& out, const WindowSeries& series) {
    out << "n,count\n";
    for (u64 n = 1; n <= series.N; ++n) out << n << ',' << series.counts[n] << '\n';
}

}  // namespace hwl
