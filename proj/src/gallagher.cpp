#include "hwl/gallagher.hpp"

#include "hwl/errors.hpp"
#include "hwl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hwl {

TupleVector::TupleVector(std::vector<std::uint64_t> offsets) : offsets_(std::move(offsets)) {
    validate_offsets(offsets_);
}

std::uint64_t TupleVector::residue_classes(std::uint64_t p) const {
    if (p > largest()) return offsets_.size();
    std::set<std::uint64_t> classes;
    for (auto d : offsets_) classes.insert(d % p);
    return classes.size();
}

TupleVector TupleVector::translated(std::uint64_t shift) const {
    std::vector<std::uint64_t> out(offsets_);
    for (auto& d : out) d += shift;
    return TupleVector(std::move(out));
}

mpz_class stirling2(unsigned j, unsigned r) {
    if (j > 64) throw ConfigError("stirling2: j must be at most 64");
    if (r > j) throw ConfigError("stirling2: r must not exceed j");
    // Row-by-row S(n,k) = k S(n-1,k) + S(n-1,k-1).
    std::vector<mpz_class> row(j + 1, 0);
    row[0] = 1;
    for (unsigned n = 1; n <= j; ++n) {
        for (unsigned k = n; k >= 1; --k) row[k] = row[k] * k + row[k - 1];
        row[0] = 0;
    }
    return row[r];
}

mpz_class surjections(unsigned j, unsigned r) {
    if (r < 1) throw ConfigError("surjections: r must be at least 1");
    if (r > j) throw ConfigError("surjections: r must not exceed j");
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), r);
    return fact * stirling2(j, r);
}

MomentPrediction gallagher_moment(unsigned j, double eta, mpfr_bits bits) {
    if (j < 1 || j > 20) throw ConfigError("gallagher_moment: j must lie in [1, 20]");
    if (!(eta > 0)) throw ConfigError("gallagher_moment: eta must be positive");
    MomentPrediction out;
    out.j = j;
    out.eta = eta;
    out.m = Real(bits);
    const Real e(eta, bits);
    Real power(1L, bits);
    for (unsigned r = 1; r <= j; ++r) {
        power *= e;
        out.terms.push_back(Real(stirling2(j, r), bits) * power);
        out.m += out.terms.back();
    }
    return out;
}

SingularSeries singular_series(const TupleVector& d, std::uint64_t p_max) {
    const std::uint64_t j = d.size();
    if (p_max < d.largest()) throw ConfigError("singular_series: p_max must be at least d_j");
    p_max = std::max<std::uint64_t>(p_max, 2 * j + 1);

    SingularSeries out;
    out.p_max = p_max;
    long double log_sum = 0;
    long double compensation = 0;
    std::uint64_t terms = 0;
    const PrimeTable table = sieve_range(0, p_max);
    for (std::uint64_t p : table.primes()) {
        const std::uint64_t v = d.residue_classes(p);
        if (v == p) {
            out.vanishes = true;
            out.value = 0;
            out.tail_bound = 0;
            return out;
        }
        long double term;
        if (v == j) {
            const long double u = 1.0L / static_cast<long double>(p - 1);
            term = static_cast<long double>(j - 1) * std::log1p(u) +
                   std::log1p(-static_cast<long double>(j - 1) * u);
        } else {
            const long double pl = static_cast<long double>(p);
            term = static_cast<long double>(j - 1) * std::log(pl) +
                   std::log(pl - static_cast<long double>(v)) -
                   static_cast<long double>(j) * std::log(pl - 1);
        }
        // Kahan summation.
        const long double yk = term - compensation;
        const long double t = log_sum + yk;
        compensation = (t - log_sum) - yk;
        log_sum = t;
        ++terms;
    }
    out.value = static_cast<double>(std::exp(log_sum));

    // For p > p_max every factor is f = p^{j-1}(p-j)/(p-1)^j with u = 1/(p-1) <= 1/(2(j-1)),
    // and -c u^2 <= log f <= 0 with c = (j-1)(2j-1)/2; sum_{p > p_max} u^2 <= 1/(p_max - 1).
    const long double c = static_cast<long double>((j - 1) * (2 * j - 1)) / 2.0L;
    const long double tau = c / static_cast<long double>(p_max - 1);
    const long double truncation = out.value * -std::expm1(-tau);
    // log-sum and exp rounding, generously: 8 ulp of long double per term plus the final
    // conversion to double.
    const long double rounding =
        out.value * (static_cast<long double>(terms) * 8.0L * 1.1e-19L + 4.0L * 1.2e-16L);
    out.tail_bound = static_cast<double>(truncation + rounding);
    return out;
}

HLPrediction hl_prediction(const TupleVector& d, std::uint64_t N, std::uint64_t p_max) {
    if (N < 3) throw ConfigError("hl_prediction: N must be at least 3");
    HLPrediction out;
    out.series = singular_series(d, std::max<std::uint64_t>(p_max, d.largest()));
    out.N = N;
    const double logN = std::log(static_cast<double>(N));
    out.value = out.series.value * static_cast<double>(N) /
                std::pow(logN, static_cast<double>(d.size()));
    return out;
}

PoissonMoment poisson_moment(unsigned j, double eta, mpfr_bits bits) {
    if (j > 20) throw ConfigError("poisson_moment: j must be at most 20");
    if (!(eta > 0)) throw ConfigError("poisson_moment: eta must be positive");
    PoissonMoment out;
    out.j = j;
    out.eta = eta;
    const Real e(eta, bits);
    Real weight = exp(-e);  // e^{-eta} eta^t / t!
    Real sum(bits);
    const Real eps = pow2(-static_cast<long>(bits) + 8, bits);
    std::uint64_t t = 0;
    for (;; ++t) {
        if (t > 0) {
            weight *= e;
            weight /= static_cast<long>(t);
        }
        const Real term = pow(Real(static_cast<long>(t), bits), static_cast<long>(j)) * weight;
        sum += term;
        // Term ratio eta (1 + 1/s)^j / (s + 1) decreases in s; once it is below 1/2 and the
        // next term is negligible, the geometric tail bounds the rest.
        const double s = static_cast<double>(t + 1);
        const double ratio = eta * std::pow(1.0 + 1.0 / s, j) / (s + 1.0);
        if (t >= 1 && ratio < 0.5) {
            const Real next = pow(Real(static_cast<long>(t + 1), bits), static_cast<long>(j)) *
                              weight * e / static_cast<long>(t + 1);
            if (next <= sum * eps) {
                out.value = sum;
                out.tail_bound = next * Real(1.0 / (1.0 - ratio), bits) +
                                 sum * eps * Real(static_cast<long>(t + 2), bits);
                return out;
            }
        }
    }
}

}  // namespace hwl
