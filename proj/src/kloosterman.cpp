#include "hwl/kloosterman.hpp"

#include "hwl/errors.hpp"

#include <cmath>
#include <numeric>

namespace hwl {

namespace {

// Inverse of a modulo c for gcd(a, c) = 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t c) {
    std::int64_t r0 = static_cast<std::int64_t>(c), r1 = static_cast<std::int64_t>(a % c);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    std::int64_t v = s0 % static_cast<std::int64_t>(c);
    if (v < 0) v += static_cast<std::int64_t>(c);
    return static_cast<std::uint64_t>(v);
}

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

}  // namespace

KloostermanModulus::KloostermanModulus(std::uint64_t c) : c_(c) {
    if (c < 1) throw ConfigError("kloosterman: modulus must be positive");
    if (c == 1) {
        units_.push_back(0);
        inverses_.push_back(0);
        return;
    }
    for (std::uint64_t x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        units_.push_back(x);
        inverses_.push_back(mod_inverse(x, c));
    }
}

std::vector<std::uint64_t> KloostermanModulus::folded_histogram(std::uint64_t m, std::uint64_t n) const {
    const std::uint64_t c = c_;
    std::vector<std::uint64_t> raw(c, 0);
    const std::uint64_t mm = m % c, nn = n % c;
    for (std::size_t i = 0; i < units_.size(); ++i) {
        const std::uint64_t r = (mm * units_[i] + nn * inverses_[i]) % c;
        ++raw[r];
    }
    std::vector<std::uint64_t> folded(c / 2 + 1, 0);
    folded[0] = raw[0];
    for (std::uint64_t r = 1; r <= c / 2; ++r) {
        folded[r] = raw[r];
        if (c - r != r) folded[r] += raw[c - r];
    }
    return folded;
}

const std::vector<Real>& KloostermanModulus::cos_table(mpfr_bits bits) const {
    const mpfr_bits guard = 16 + 2 * static_cast<mpfr_bits>(std::ceil(std::log2(static_cast<double>(c_) + 1)));
    const mpfr_bits gb = bits + guard;
    if (cos_bits_ >= gb && !cos_.empty()) return cos_;
    const std::uint64_t half = c_ / 2;
    cos_.assign(half + 1, Real(0L, gb));
    cos_[0] = Real(1L, gb);
    if (half >= 1) {
        Real theta = pi(gb) * 2L / static_cast<long>(c_);
        cos_[1] = cos(theta);
        const Real two_c1 = cos_[1] * 2L;
        for (std::uint64_t r = 2; r <= half; ++r) cos_[r] = two_c1 * cos_[r - 1] - cos_[r - 2];
    }
    cos_bits_ = gb;
    return cos_;
}

const std::vector<long double>& KloostermanModulus::cos_table_ld() const {
    if (!cos_ld_.empty()) return cos_ld_;
    const std::uint64_t half = c_ / 2;
    cos_ld_.resize(half + 1);
    for (std::uint64_t r = 0; r <= half; ++r) {
        cos_ld_[r] = std::cos(2 * kPiL * static_cast<long double>(r) / static_cast<long double>(c_));
    }
    return cos_ld_;
}

Real KloostermanModulus::sum(std::uint64_t m, std::uint64_t n, mpfr_bits bits) const {
    const auto h = folded_histogram(m, n);
    const auto& table = cos_table(bits);
    const mpfr_bits gb = table.front().precision();
    Real acc(0L, gb), term(gb);
    for (std::size_t r = 0; r < h.size(); ++r) {
        if (h[r] == 0) continue;
        mpfr_mul_ui(term.raw(), table[r].raw(), h[r], MPFR_RNDN);
        acc += term;
    }
    acc.set_precision(bits);
    return acc;
}

long double KloostermanModulus::sum_ld(std::uint64_t m, std::uint64_t n, double* error_bound) const {
    const auto h = folded_histogram(m, n);
    const auto& table = cos_table_ld();
    long double acc = 0;
    for (std::size_t r = 0; r < h.size(); ++r) {
        if (h[r] != 0) acc += static_cast<long double>(h[r]) * table[r];
    }
    if (error_bound) {
        const double phi = static_cast<double>(totient());
        *error_bound = phi * (1e-18 + (static_cast<double>(c_) / 2 + 2) * 6e-20);
    }
    return acc;
}

Real kloosterman(std::uint64_t m, std::uint64_t n, std::uint64_t c, mpfr_bits bits) {
    return KloostermanModulus(c).sum(m, n, bits);
}

std::uint64_t divisor_count(std::uint64_t c) {
    if (c == 0) throw ConfigError("divisor_count: c must be positive");
    std::uint64_t count = 1;
    for (std::uint64_t p = 2; p * p <= c; ++p) {
        unsigned e = 0;
        while (c % p == 0) {
            c /= p;
            ++e;
        }
        count *= e + 1;
    }
    if (c > 1) count *= 2;
    return count;
}

double weil_bound(std::uint64_t m, std::uint64_t n, std::uint64_t c) {
    const std::uint64_t g = std::gcd(std::gcd(m, n), c);
    return static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(c)) *
           std::sqrt(static_cast<double>(g));
}

}  // namespace hwl
