#pragma once

// Second moments of sum_{n-y < p <= n} lambda_f(p)^2 over n <= N, per form and
// in harmonic average over all of S_k via the geometric side.

#include "hwl/eigenforms.hpp"
#include "hwl/petersson.hpp"
#include "hwl/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hwl {

inline constexpr const char* kWindowConvention = "half-open (n-y, n], ceil(y) integers";

/// One bounded contribution to the gap between a harmonic total and its main term.
struct BudgetTerm {
    std::string name;
    double value = 0;  // |computed contribution|
    double bound = 0;  // trace-formula bound (working constant) or certified tail
    bool certified = false;
};

struct SecondMomentReport {
    std::string mode;   // "per-form" or "harmonic"
    std::string label;  // form label in per-form mode
    int k = 0;
    std::uint64_t N = 0;
    double eta = 0;
    double y = 0;
    std::uint64_t width = 0;
    std::string window_convention = kWindowConvention;
    int digits = 0;

    Real total;
    Real diagonal;
    Real off_diagonal;
    // Per-form routes (direct sum of squares, diagonal/cross split, Hecke-expanded).
    Real route_direct;
    Real route_split;
    Real route_hecke;
    double route_discrepancy = 0;  // max pairwise difference
    bool routes_exact = false;     // compared in exact field arithmetic

    mpz_class exact_prime_square_moment;  // sum_n W(n)^2
    mpz_class exact_prime_first_moment;   // sum_n W(n)
    mpz_class pair_incidences;            // sum_n C(W(n), 2)
    mpz_class pair_tuple_sum;             // sum_{1<=d1<d2<=width} pi_(d1,d2)(N+1)
    double prediction_conjectural = 0;    // N (m_2(eta) + eta)

    // Harmonic mode.
    Real h11;                    // sum_f w_f = H[1,1]
    Real diagonal_ratio;         // diagonal / (H[1,1] sum_n W(n))
    double diagonal_delta = 0;   // trace-formula budget for |ratio - 2|
    Real correction;             // total - H[1,1] (sum W^2 + sum W)
    double certified_tail = 0;   // summed geometric-side tails with multiplicity
    double estimated_error = 0;  // uncertified Bessel recurrence contributions
    std::vector<BudgetTerm> error_budget;
    std::uint64_t distinct_h_values = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    bool in_regime = true;  // k >= N^2
};

/// Requires a(p^2) for p <= N, i.e. form precision >= N^2. Exact forms are
/// summed in their coefficient field, numeric forms at the form's precision.
SecondMomentReport per_form_second_moment(const Eigenform& f, std::uint64_t N, double eta, int digits = 60);

/// Harmonic average sum_f w_f sum_n A_f(n, y)^2 from geometric sides only.
SecondMomentReport harmonic_second_moment(int k, std::uint64_t N, double eta, PeterssonEvaluator& evaluator);
SecondMomentReport harmonic_second_moment(int k, std::uint64_t N, double eta, double tolerance,
                                          int digits = 60, int threads = 1);

struct LargeWeightReport {
    SecondMomentReport moment;
    Real normalized_total;          // total / (N H[1,1])
    double unconditional_target = 0;  // (sum W^2 + sum W) / N
    double conjectural_target = 0;    // m_2(eta) + eta = eta^2 + 2 eta
    double discrepancy_unconditional = 0;
    double discrepancy_conjectural = 0;
    double correction_budget = 0;  // (trace-formula bounds + tails) / (N H[1,1])
    double certified_part = 0;     // certified tails / (N H[1,1])
    double heuristic_part = 0;     // working-constant bounds and recurrence estimates / (N H[1,1])
    bool within_budget = false;
    bool in_regime = true;
};

LargeWeightReport large_weight_report(int k, std::uint64_t N, double eta, PeterssonEvaluator& evaluator);

struct GallagherRow {
    double eta = 0;
    unsigned j = 0;
    double y = 0;
    std::uint64_t width = 0;
    mpz_class moment;           // sum_n W(n)^j
    double empirical = 0;       // moment / N
    double gallagher = 0;       // m_j(eta)
    double relative_error = 0;  // |empirical - m_j| / m_j
    bool identity_exact = false;
    double hl_conjectural = 0;  // (1/N) sum_r r! S(j,r) sum_d HL(d)
    double hl_tail = 0;         // summed singular-series tail bounds, scaled like the column
};

struct GallagherTable {
    std::uint64_t N = 0;
    unsigned j_max = 0;
    std::uint64_t hl_p_max = 0;
    std::string window_convention = kWindowConvention;
    std::vector<GallagherRow> rows;
};

GallagherTable gallagher_report(std::uint64_t N, const std::vector<double>& etas, unsigned j_max,
                                int threads = 1, std::uint64_t hl_p_max = 10'000);

}  // namespace hwl
