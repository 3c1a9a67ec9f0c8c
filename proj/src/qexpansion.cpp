#include "hwl/qexpansion.hpp"

#include "hwl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace hwl {

static_assert(sizeof(mp_limb_t) == 8 && GMP_NAIL_BITS == 0, "64-bit GMP limbs expected");

QExpansion::QExpansion(int weight, std::vector<mpz_class> coeffs)
    : weight_(weight), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("QExpansion: need at least the constant term");
}

const mpz_class& QExpansion::operator[](std::size_t n) const {
    if (n >= coeffs_.size()) {
        throw PrecisionError("QExpansion: coefficient " + std::to_string(n) +
                             " beyond precision " + std::to_string(precision()));
    }
    return coeffs_[n];
}

QExpansion QExpansion::truncated(std::size_t M) const {
    if (M > precision()) throw PrecisionError("QExpansion::truncated: cannot extend precision");
    return QExpansion(weight_, std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + M + 1));
}

QExpansion& QExpansion::operator+=(const QExpansion& o) {
    if (weight_ != o.weight_) throw std::invalid_argument("QExpansion: adding different weights");
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

QExpansion& QExpansion::operator-=(const QExpansion& o) {
    if (weight_ != o.weight_) throw std::invalid_argument("QExpansion: subtracting different weights");
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

QExpansion& QExpansion::operator*=(const mpz_class& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

void QExpansion::subtract_multiple(const mpz_class& s, const QExpansion& o) {
    if (weight_ != o.weight_) throw std::invalid_argument("QExpansion: subtracting different weights");
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        mpz_submul(coeffs_[i].get_mpz_t(), s.get_mpz_t(), o.coeffs_[i].get_mpz_t());
    }
}

QExpansion operator+(QExpansion a, const QExpansion& b) { return a += b; }
QExpansion operator-(QExpansion a, const QExpansion& b) { return a -= b; }
QExpansion operator*(QExpansion a, const mpz_class& s) { return a *= s; }

QExpansion operator*(const QExpansion& a, const QExpansion& b) {
    const std::size_t n = std::min(a.precision(), b.precision()) + 1;
    return QExpansion(a.weight() + b.weight(), multiply_series(a.coeffs(), b.coeffs(), n));
}

bool operator==(const QExpansion& a, const QExpansion& b) {
    return a.weight() == b.weight() && a.precision() == b.precision() &&
           std::equal(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin());
}

QExpansion power(const QExpansion& a, unsigned e) {
    std::vector<mpz_class> one(a.precision() + 1, 0);
    one[0] = 1;
    QExpansion result(0, std::move(one));
    QExpansion base = a;
    bool first = true;
    while (e > 0) {
        if (e & 1U) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

namespace {

std::size_t max_bits(std::span<const mpz_class> a, std::size_t n) {
    std::size_t bits = 0;
    for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
        if (a[i] != 0) bits = std::max(bits, mpz_sizeinbase(a[i].get_mpz_t(), 2));
    }
    return bits;
}

std::vector<mpz_class> schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                  std::size_t n) {
    std::vector<mpz_class> out(n, 0);
    for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
        if (a[i] == 0) continue;
        const std::size_t jmax = std::min(n - i, b.size());
        for (std::size_t j = 0; j < jmax; ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

// Packs c_0..c_{n-1} into sum c_i 2^{64 L i} as P - Q with P, Q built from the
// positive and negative parts.
mpz_class pack(std::span<const mpz_class> c, std::size_t n, std::size_t L) {
    n = std::min(n, c.size());
    std::vector<std::uint64_t> pos(n * L, 0), neg(n * L, 0);
    bool any_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = sgn(c[i]);
        if (s == 0) continue;
        std::uint64_t* dst = (s > 0 ? pos.data() : neg.data()) + i * L;
        any_neg = any_neg || s < 0;
        std::size_t count = 0;
        mpz_export(dst, &count, -1, 8, 0, 0, c[i].get_mpz_t());
    }
    mpz_class P, Q;
    mpz_import(P.get_mpz_t(), pos.size(), -1, 8, 0, 0, pos.data());
    if (!any_neg) return P;
    mpz_import(Q.get_mpz_t(), neg.size(), -1, 8, 0, 0, neg.data());
    return P - Q;
}

// Reads signed L-limb digits of Z = sum c_i 2^{64 L i}.
std::vector<mpz_class> unpack(const mpz_class& Z, std::size_t n, std::size_t L) {
    std::vector<mpz_class> out(n, 0);
    const int sign = sgn(Z);
    if (sign == 0) return out;
    const mp_limb_t* limbs = mpz_limbs_read(Z.get_mpz_t());
    const std::size_t size = mpz_size(Z.get_mpz_t());
    mpz_class half, full;
    mpz_ui_pow_ui(full.get_mpz_t(), 2, 64 * L);
    half = full / 2;
    int carry = 0;
    mpz_class chunk;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t begin = i * L;
        if (begin >= size) {
            chunk = 0;
        } else {
            const std::size_t len = std::min(L, size - begin);
            mpz_import(chunk.get_mpz_t(), len, -1, 8, 0, 0, limbs + begin);
        }
        if (carry) chunk += 1;
        if (chunk >= half) {
            chunk -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        out[i] = sign < 0 ? mpz_class(-chunk) : chunk;
    }
    return out;
}

}  // namespace

std::vector<mpz_class> multiply_series(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t n) {
    const std::size_t na = std::min(n, a.size());
    const std::size_t nb = std::min(n, b.size());
    if (na == 0 || nb == 0) return std::vector<mpz_class>(n, 0);
    if (std::min(na, nb) <= 32) return schoolbook(a, b, n);

    const std::size_t ba = max_bits(a, na);
    const std::size_t bb = max_bits(b, nb);
    if (ba == 0 || bb == 0) return std::vector<mpz_class>(n, 0);
    std::size_t terms_bits = 1;
    while ((std::size_t{1} << terms_bits) < std::min(na, nb)) ++terms_bits;
    const std::size_t slot = ba + bb + terms_bits + 2;
    const std::size_t L = (slot + 63) / 64;

    const bool same = a.data() == b.data() && na == nb;
    const mpz_class X = pack(a, na, L);
    mpz_class Z;
    if (same) {
        mpz_mul(Z.get_mpz_t(), X.get_mpz_t(), X.get_mpz_t());
    } else {
        const mpz_class Y = pack(b, nb, L);
        mpz_mul(Z.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
    }
    return unpack(Z, n, L);
}

std::vector<mpz_class> divisor_sums(unsigned r, std::size_t M) {
    std::vector<mpz_class> out(M + 1, 0);
    // 128-bit accumulation when every sigma_r(n) <= 2 n^r fits comfortably.
    double log2_bound = 1.0;
    for (unsigned i = 0; i < r; ++i) log2_bound += std::log2(static_cast<double>(std::max<std::size_t>(M, 2)));
    if (log2_bound < 124.0) {
        using u128 = unsigned __int128;
        std::vector<u128> acc(M + 1, 0);
        for (std::size_t d = 1; d <= M; ++d) {
            u128 p = 1;
            for (unsigned i = 0; i < r; ++i) p *= d;
            for (std::size_t m = d; m <= M; m += d) acc[m] += p;
        }
        for (std::size_t m = 1; m <= M; ++m) {
            const auto hi = static_cast<std::uint64_t>(acc[m] >> 64);
            const auto lo = static_cast<std::uint64_t>(acc[m]);
            out[m] = static_cast<unsigned long>(hi);
            out[m] <<= 64;
            out[m] += static_cast<unsigned long>(lo);
        }
        return out;
    }
    for (std::size_t d = 1; d <= M; ++d) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), d, r);
        for (std::size_t m = d; m <= M; m += d) out[m] += p;
    }
    return out;
}

QExpansion eisenstein(int series_weight, std::size_t M) {
    if (M < 1) throw ConfigError("eisenstein: M must be at least 1");
    long scale;
    unsigned r;
    if (series_weight == 4) {
        scale = 240;
        r = 3;
    } else if (series_weight == 6) {
        scale = -504;
        r = 5;
    } else {
        throw ConfigError("eisenstein: only weights 4 and 6 are supported");
    }
    std::vector<mpz_class> c = divisor_sums(r, M);
    for (auto& v : c) v *= scale;
    c[0] = 1;
    return QExpansion(series_weight, std::move(c));
}

QExpansion delta(std::size_t M) {
    if (M < 1) throw ConfigError("delta: M must be at least 1");
    // J = prod (1 - q^n)^3 = sum_{t>=0} (-1)^t (2t+1) q^{t(t+1)/2}; Delta = q J^8.
    const std::size_t n = M;  // coefficients of J^8 at q^0..q^{M-1}
    std::vector<std::pair<std::size_t, long>> J;
    for (std::size_t t = 0;; ++t) {
        const std::size_t e = t * (t + 1) / 2;
        if (e >= n) break;
        J.emplace_back(e, (t % 2 ? -1L : 1L) * static_cast<long>(2 * t + 1));
    }
    // J^2 from the sparse form; coefficients stay far below 2^63.
    std::vector<long long> j2(n, 0);
    for (const auto& [e1, c1] : J) {
        for (const auto& [e2, c2] : J) {
            if (e1 + e2 >= n) break;
            j2[e1 + e2] += static_cast<long long>(c1) * c2;
        }
    }
    std::vector<mpz_class> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = static_cast<long>(j2[i]);
    std::vector<mpz_class> j4 = multiply_series(sq, sq, n);
    std::vector<mpz_class> j8 = multiply_series(j4, j4, n);
    std::vector<mpz_class> c(M + 1, 0);
    for (std::size_t i = 0; i < n; ++i) c[i + 1] = std::move(j8[i]);
    return QExpansion(12, std::move(c));
}

}  // namespace hwl
