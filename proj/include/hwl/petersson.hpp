#pragma once

// Geometric side of the Petersson trace formula:
//   H[m,n] = delta(m,n) + 2 pi (-1)^{k/2} sum_c S(m,n;c)/c J_{k-1}(4 pi sqrt(mn)/c),
// which equals Gamma(k-1)/(4 pi)^{k-1} sum_f lambda_f(m) lambda_f(n) / |f|^2.

#include "hwl/eigenforms.hpp"
#include "hwl/real.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hwl {

struct GeometricSideValue {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    int k = 0;
    std::uint64_t c_max = 0;
    int digits = 0;
    double tolerance = 0;
    Real value;
    double tail_bound = 0;       // certified: c > c_max, skipped small terms, rounding
    double estimated_error = 0;  // Bessel recurrence contributions (estimate)
    bool certified = true;       // estimated_error == 0
    std::uint64_t terms_evaluated = 0;
};

struct TruncationPlan {
    std::uint64_t c_max = 0;
    std::vector<char> evaluate;      // index c = 1..c_max
    std::vector<double> log_bessel;  // log bound on |J_{k-1}(4 pi sqrt(mn)/c)|, index c
    double tail = 0;                 // terms with c > c_max
    double skipped = 0;              // terms c <= c_max below the evaluation threshold
};

/// Chooses c_max (smallest c with certified tail <= tolerance/2) or, when c_max
/// is given, checks its tail against the tolerance. Throws ToleranceError when the
/// tolerance cannot be met within `c_budget` or by the given c_max.
TruncationPlan plan_truncation(std::uint64_t m, std::uint64_t n, int k, double tolerance,
                               std::uint64_t c_max = 0, std::uint64_t c_budget = 200000);

class PeterssonEvaluator {
public:
    struct Options {
        int digits = 60;
        double tolerance = 1e-20;
        std::uint64_t c_budget = 200000;
        int threads = 1;
    };

    PeterssonEvaluator();
    explicit PeterssonEvaluator(Options options);

    const Options& options() const { return options_; }

    /// Cached H[m, n] for weight k (symmetric in m, n).
    const GeometricSideValue& value(std::uint64_t m, std::uint64_t n, int k);
    /// Computes every uncached pair in one pass over c.
    void prefetch(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs, int k);
    /// Uncached evaluation with an explicit c_max (0 = automatic).
    GeometricSideValue compute(std::uint64_t m, std::uint64_t n, int k, std::uint64_t c_max);

    std::uint64_t cache_hits() const { return hits_; }
    std::uint64_t cache_misses() const { return misses_; }

private:
    using Pair = std::pair<std::uint64_t, std::uint64_t>;
    std::vector<GeometricSideValue> evaluate(const std::vector<Pair>& pairs, int k,
                                             const std::vector<TruncationPlan>& plans);

    struct KloostermanEntry {
        bool has_ld = false;
        long double ld = 0;
        double ld_error = 0;
        std::unique_ptr<Real> real;
    };

    Options options_;
    std::map<std::tuple<std::uint64_t, std::uint64_t, int>, GeometricSideValue> cache_;
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, KloostermanEntry> kloosterman_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

/// One-off H[m, n]; c_max = 0 chooses it automatically from the tolerance.
GeometricSideValue geometric_side(std::uint64_t m, std::uint64_t n, int k, std::uint64_t c_max, int digits,
                                  double tolerance = 1e-20);

/// Working value of the absolute constant in |H[m,n] - delta(m,n)| <= C trace_error_bound(m,n,k):
/// ten times the largest ratio observed over the fitting grid in tools/fit_trace_constant.cpp.
inline constexpr double kTraceFormulaConstant = 53.0;

/// (log 3mn)^2 d((m, n)) (mn)^{1/4} / sqrt(k).
double trace_error_bound(std::uint64_t m, std::uint64_t n, int k);

struct HarmonicWeights {
    int k = 0;
    std::vector<std::string> labels;
    std::vector<Real> weights;  // Gamma(k-1) / ((4 pi)^{k-1} |f|^2)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> fit_pairs;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> held_out;
    Real residual;  // max over held-out pairs of |sum_f w_f lambda_f(m) lambda_f(n) - H[m,n]|
    double condition = 0;

    const Real& weight_of(const std::string& label) const;
};

/// Solves sum_f w_f lambda_f(m) lambda_f(n) = H[m, n] over the fit pairs (least
/// squares when there are more pairs than forms). Throws PrecisionError for an
/// ill-conditioned system (condition number above 1e12) or a non-positive weight.
HarmonicWeights extract_weights(int k, const std::vector<Eigenform>& forms,
                                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& fit_pairs,
                                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& held_out,
                                PeterssonEvaluator& evaluator);

/// Lambda_f(p) = (k/12)^{1/4} w_f^{1/2} lambda_f(p).
Real scaled_lambda(const Eigenform& f, const HarmonicWeights& weights, std::uint64_t p, mpfr_bits bits);

}  // namespace hwl
