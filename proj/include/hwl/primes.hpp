#pragma once

// Segmented sieving, short-interval prime window statistics and prime-tuple
// counting.
//
// Window convention: W(n) counts primes p with n - y < p <= n. The window holds
// exactly ceil(y) integers, {n - ceil(y) + 1, ..., n}.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hwl {

class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> bits);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t size() const { return hi_ - lo_ + 1; }
    bool contains(std::uint64_t m) const { return m >= lo_ && m <= hi_; }

    /// Primality of m; m must lie in [lo, hi].
    bool is_prime(std::uint64_t m) const;
    std::uint64_t count() const;
    std::vector<std::uint64_t> primes() const;

    /// Bit i describes lo + i; unused high bits of the last word are zero.
    std::span<const std::uint64_t> words() const { return bits_; }

    /// Joins two adjacent tables (a.hi + 1 == b.lo).
    static PrimeTable concat(const PrimeTable& a, const PrimeTable& b);

    friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

private:
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline constexpr std::uint64_t kSieveSegment = std::uint64_t{1} << 20;

/// Primality over [lo, hi], sieved in 2^20-integer segments.
PrimeTable sieve_range(std::uint64_t lo, std::uint64_t hi, int threads = 1);

/// Primes up to `limit`, in increasing order.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Number of integers inside a window of real length y: ceil(y).
std::uint64_t window_width(double y);

struct WindowSeries {
    std::uint64_t N = 0;
    double y = 0;
    std::uint64_t width = 0;            // ceil(y)
    std::vector<std::uint16_t> counts;  // counts[n] for n in [0, N]; counts[0] = 0
};

WindowSeries window_counts(std::uint64_t N, double y, int threads = 1);
WindowSeries window_counts(const PrimeTable& table, std::uint64_t N, double y, int threads = 1);

/// Exact sum over n <= N of W(n)^j.
mpz_class window_moment(std::uint64_t N, double y, unsigned j);
mpz_class window_moment(const WindowSeries& series, unsigned j);

/// Offsets d_1 < ... < d_r, all positive.
void validate_offsets(std::span<const std::uint64_t> d);

/// Number of n <= N with n - d_i prime for every i.
std::uint64_t tuple_count(std::uint64_t N, std::span<const std::uint64_t> d);
/// Same, against a table that covers [0, N].
std::uint64_t tuple_count(const PrimeTable& table, std::uint64_t N,
                          std::span<const std::uint64_t> d);

struct IdentityReport {
    std::uint64_t N = 0;
    double y = 0;
    unsigned j = 0;
    std::uint64_t max_offset = 0;   // tuple offsets range over 1..max_offset
    mpz_class lhs;                  // sum_n W(n)^j
    mpz_class rhs;                  // sum_r sigma(j,r) sum_d pi_d(N+1)
    std::vector<mpz_class> lhs_by_r;  // sigma(j,r) * sum_n C(W(n), r)
    std::vector<mpz_class> rhs_by_r;  // sigma(j,r) * sum_d pi_d(N+1)
    bool equal = false;
    unsigned first_mismatch_r = 0;  // 0 when equal
};

/// Checks sum_n W(n)^j = sum_{r=1}^{j} sigma(j,r) sum_{1<=d_1<...<d_r<=ceil(y)} pi_d(N+1).
/// The shift to N+1 aligns tuple offsets 1..ceil(y) with the window (n-y, n]:
/// p in the window of n  <=>  p = (n+1) - d with 1 <= d <= ceil(y).
IdentityReport moment_identity_check(std::uint64_t N, double y, unsigned j, int threads = 1);

/// Binary cache: "HWL1", lo and hi as 8-byte little-endian, then the bitset
/// (bit i of byte i/8, least significant bit first, for integer lo + i).
void write_prime_table(std::ostream& out, const PrimeTable& table);
PrimeTable read_prime_table(std::istream& in);
void save_prime_table(const std::string& path, const PrimeTable& table);
PrimeTable load_prime_table(const std::string& path);

/// CSV `n,count` with a header row.
void write_window_csv(std::ostream& out, const WindowSeries& series);

}  // namespace hwl
