#pragma once

// Combinatorics of prime-window moments and the Hardy-Littlewood / Poisson
// predictions that go with them.

#include "hwl/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace hwl {

/// Strictly increasing positive offsets d_1 < ... < d_j.
class TupleVector {
public:
    explicit TupleVector(std::vector<std::uint64_t> offsets);

    std::span<const std::uint64_t> offsets() const { return offsets_; }
    std::size_t size() const { return offsets_.size(); }
    std::uint64_t largest() const { return offsets_.back(); }

    /// Number of distinct residue classes of the offsets mod p.
    std::uint64_t residue_classes(std::uint64_t p) const;

    TupleVector translated(std::uint64_t shift) const;

private:
    std::vector<std::uint64_t> offsets_;
};

/// Partitions of a j-set into r non-empty blocks, 0 <= r <= j <= 64.
mpz_class stirling2(unsigned j, unsigned r);

/// Maps from {1..j} onto {1..r}: r! S(j, r), 1 <= r <= j.
mpz_class surjections(unsigned j, unsigned r);

struct MomentPrediction {
    unsigned j = 0;
    double eta = 0;
    Real m;                   // sum of terms
    std::vector<Real> terms;  // terms[r-1] = S(j, r) eta^r
};

/// m_j(eta) = sum_{r=1}^{j} S(j, r) eta^r, 1 <= j <= 20.
MomentPrediction gallagher_moment(unsigned j, double eta, mpfr_bits bits = Real::kDefaultBits);

struct SingularSeries {
    double value = 0;
    double tail_bound = 0;  // |true - value| <= tail_bound
    std::uint64_t p_max = 0;
    bool vanishes = false;  // some local factor is exactly 0
};

/// Truncated Euler product prod_{p <= p_max} p^{j-1} (p - v(p)) / (p-1)^j with a
/// rigorous bound on the omitted factors p > p_max.
SingularSeries singular_series(const TupleVector& d, std::uint64_t p_max);

struct HLPrediction {
    SingularSeries series;
    std::uint64_t N = 0;
    double value = 0;  // series * N / log(N)^j
};

HLPrediction hl_prediction(const TupleVector& d, std::uint64_t N, std::uint64_t p_max = 1'000'000);

struct PoissonMoment {
    unsigned j = 0;
    double eta = 0;
    Real value;
    Real tail_bound;  // omitted series terms plus rounding allowance
};

/// j-th raw moment of Poisson(eta) by direct summation, j <= 20.
PoissonMoment poisson_moment(unsigned j, double eta, mpfr_bits bits = Real::kDefaultBits);

}  // namespace hwl
