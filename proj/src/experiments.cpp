#include "hwl/experiments.hpp"

#include "hwl/errors.hpp"
#include "hwl/gallagher.hpp"
#include "hwl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hwl {

namespace {

using u64 = std::uint64_t;

// Prime content of every window (n - y, n], n = 1..N.
struct WindowData {
    u64 N = 0;
    double y = 0;
    u64 width = 0;
    std::vector<std::vector<u64>> primes;  // index n
    std::map<u64, u64> prime_count;                   // p -> number of windows containing p
    std::map<std::pair<u64, u64>, u64> pair_count;    // p1 < p2 -> windows containing both
    mpz_class first, second, pairs;
    PrimeTable table;  // covers [0, N + 1]
};

WindowData build_windows(u64 N, double eta) {
    if (N < 2) throw ConfigError("second moment: N must be at least 2");
    if (!(eta > 0) || !std::isfinite(eta)) throw ConfigError("second moment: eta must be positive");
    WindowData w;
    w.N = N;
    w.y = eta * std::log(static_cast<double>(N));
    w.width = window_width(w.y);
    w.table = sieve_range(0, N + 1);
    w.primes.resize(N + 1);
    for (u64 n = 1; n <= N; ++n) {
        const u64 lo = n >= w.width ? n - w.width + 1 : 1;
        auto& ps = w.primes[n];
        for (u64 p = std::max<u64>(lo, 2); p <= n; ++p)
            if (w.table.is_prime(p)) ps.push_back(p);
        const auto c = static_cast<unsigned long>(ps.size());
        w.first += c;
        w.second += c * c;
        w.pairs += c * (c - (c > 0 ? 1 : 0)) / 2;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            ++w.prime_count[ps[i]];
            for (std::size_t j = i + 1; j < ps.size(); ++j) ++w.pair_count[{ps[i], ps[j]}];
        }
    }
    return w;
}

mpz_class pair_tuple_sum(const WindowData& w) {
    mpz_class s = 0;
    for (u64 d1 = 1; d1 <= w.width; ++d1)
        for (u64 d2 = d1 + 1; d2 <= w.width; ++d2) {
            const u64 d[2] = {d1, d2};
            s += static_cast<unsigned long>(tuple_count(w.table, w.N + 1, d));
        }
    return s;
}

void fill_common(SecondMomentReport& r, const WindowData& w, int k, double eta, int digits) {
    r.k = k;
    r.N = w.N;
    r.eta = eta;
    r.y = w.y;
    r.width = w.width;
    r.digits = digits;
    r.exact_prime_first_moment = w.first;
    r.exact_prime_square_moment = w.second;
    r.pair_incidences = w.pairs;
    r.pair_tuple_sum = pair_tuple_sum(w);
    r.prediction_conjectural = static_cast<double>(w.N) * (eta * eta + 2 * eta);
    r.in_regime = static_cast<double>(k) >= static_cast<double>(w.N) * static_cast<double>(w.N);
}

QuadraticNumber times(const QuadraticNumber& a, u64 c) { return a * QuadraticNumber(mpz_class(static_cast<unsigned long>(c))); }
Real times(const Real& a, u64 c) { return a * static_cast<long>(c); }

template <class T>
struct Routes {
    T direct, diag, cross, hecke_diag, hecke_cross;
};

// lam2[p] = lambda(p)^2 and lamp2[p] = lambda(p^2), both indexed by prime p <= N.
template <class T>
Routes<T> evaluate_routes(const WindowData& w, const std::map<u64, T>& lam2, const std::map<u64, T>& lamp2,
                          const T& zero) {
    Routes<T> r{zero, zero, zero, zero, zero};
    const T one = zero + T(1L);
    for (u64 n = 1; n <= w.N; ++n) {
        T a = zero;
        for (u64 p : w.primes[n]) a += lam2.at(p);
        r.direct += a * a;
    }
    for (const auto& [p, c] : w.prime_count) {
        const T& l = lam2.at(p);
        const T& h = lamp2.at(p);
        r.diag += times(l * l, c);
        r.hecke_diag += times(h * h + h + h + one, c);
    }
    for (const auto& [pq, c] : w.pair_count) {
        r.cross += times(lam2.at(pq.first) * lam2.at(pq.second), c);
        const T& h1 = lamp2.at(pq.first);
        const T& h2 = lamp2.at(pq.second);
        r.hecke_cross += times(h1 * h2 + h1 + h2 + one, c);
    }
    return r;
}

double max_gap(const Real& a, const Real& b, const Real& c) {
    return std::max({abs(a - b).to_double(), abs(a - c).to_double(), abs(b - c).to_double()});
}

}  // namespace

SecondMomentReport per_form_second_moment(const Eigenform& f, std::uint64_t N, double eta, int digits) {
    const WindowData w = build_windows(N, eta);
    if (f.precision() < N * N) {
        throw PrecisionError("per_form_second_moment: form " + f.label() + " has coefficients to " +
                             std::to_string(f.precision()) + ", need " + std::to_string(N * N));
    }
    SecondMomentReport r;
    r.mode = "per-form";
    r.label = f.label();
    fill_common(r, w, f.weight(), eta, digits);
    const mpfr_bits bits = bits_for_digits(digits) + 32;
    const int k = f.weight();

    if (f.exact()) {
        std::map<u64, QuadraticNumber> lam2, lamp2;
        for (const auto& [p, c] : w.prime_count) {
            (void)c;
            lam2[p] = f.lambda_squared_exact(p);
            mpz_class pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k - 1));
            lamp2[p] = f.a_exact(p * p) / QuadraticNumber(pk);
        }
        const auto routes = evaluate_routes<QuadraticNumber>(w, lam2, lamp2, QuadraticNumber(0L));
        const QuadraticNumber split = routes.diag + routes.cross + routes.cross;
        const QuadraticNumber hecke = routes.hecke_diag + routes.hecke_cross + routes.hecke_cross;
        r.routes_exact = true;
        r.route_direct = routes.direct.to_real(bits);
        r.route_split = split.to_real(bits);
        r.route_hecke = hecke.to_real(bits);
        r.diagonal = routes.diag.to_real(bits);
        r.off_diagonal = (routes.cross + routes.cross).to_real(bits);
        if (routes.direct == split && split == hecke) {
            r.route_discrepancy = 0;
        } else {
            r.route_discrepancy = max_gap(r.route_direct, r.route_split, r.route_hecke);
            if (r.route_discrepancy == 0) r.route_discrepancy = std::ldexp(1.0, -static_cast<int>(bits));
        }
    } else {
        std::map<u64, Real> lam2, lamp2;
        for (const auto& [p, c] : w.prime_count) {
            (void)c;
            lam2[p] = f.lambda_squared(p, bits);
            lamp2[p] = f.lambda(p * p, bits);
        }
        const auto routes = evaluate_routes<Real>(w, lam2, lamp2, Real(0L, bits));
        r.route_direct = routes.direct;
        r.route_split = routes.diag + routes.cross * 2L;
        r.route_hecke = routes.hecke_diag + routes.hecke_cross * 2L;
        r.diagonal = routes.diag;
        r.off_diagonal = routes.cross * 2L;
        r.route_discrepancy = max_gap(r.route_direct, r.route_split, r.route_hecke);
    }
    r.total = r.route_direct;
    return r;
}

SecondMomentReport harmonic_second_moment(int k, std::uint64_t N, double eta, PeterssonEvaluator& ev) {
    if (k < 12 || k % 2 != 0) throw ConfigError("harmonic_second_moment: weight must be even and at least 12");
    const WindowData w = build_windows(N, eta);
    SecondMomentReport r;
    r.mode = "harmonic";
    fill_common(r, w, k, eta, ev.options().digits);
    const mpfr_bits bits = bits_for_digits(ev.options().digits) + 32;

    std::vector<std::pair<u64, u64>> requests{{1, 1}};
    for (const auto& [p, c] : w.prime_count) {
        (void)c;
        requests.push_back({p * p, p * p});
        requests.push_back({p * p, 1});
    }
    for (const auto& [pq, c] : w.pair_count) {
        (void)c;
        requests.push_back({pq.first * pq.first, pq.second * pq.second});
    }
    const u64 hits0 = ev.cache_hits(), misses0 = ev.cache_misses();
    ev.prefetch(requests, k);

    double tail = 0, est = 0;
    // Multiplicity-weighted H value; accumulates its error allowances.
    auto H = [&](u64 m, u64 n, u64 weight) {
        const auto& v = ev.value(m, n, k);
        tail += v.tail_bound * static_cast<double>(weight);
        est += v.estimated_error * static_cast<double>(weight);
        return v.value * static_cast<long>(weight);
    };
    const double C0 = kTraceFormulaConstant;
    auto tb = [&](u64 m, u64 n) { return C0 * trace_error_bound(m, n, k); };

    const Real h11 = ev.value(1, 1, k).value;
    Real diag(0L, bits), off(0L, bits);
    Real t1(0L, bits), t2(0L, bits), t3(0L, bits), t4(0L, bits);
    double b1 = 0, b2 = 0, b3 = 0, b4 = 0, diag_tail = 0;
    for (const auto& [p, c] : w.prime_count) {
        const u64 q = p * p;
        const double before = tail;
        const Real hqq = H(q, q, c);
        const Real hq1 = H(q, 1, 2 * c);
        const Real h1 = H(1, 1, c);
        diag_tail += tail - before;
        diag += hqq + hq1 + h1;
        t1 += hqq - h1;
        t2 += hq1;
        b1 += static_cast<double>(c) * (tb(q, q) + tb(1, 1));
        b2 += static_cast<double>(2 * c) * tb(q, 1);
    }
    for (const auto& [pq, c] : w.pair_count) {
        const u64 q1 = pq.first * pq.first, q2 = pq.second * pq.second;
        const Real cross = H(q1, q2, 2 * c);
        const Real singles = H(q1, 1, 2 * c) + H(q2, 1, 2 * c);
        off += cross + singles + H(1, 1, 2 * c);
        t3 += singles;
        t4 += cross;
        b3 += static_cast<double>(2 * c) * (tb(q1, 1) + tb(q2, 1));
        b4 += static_cast<double>(2 * c) * tb(q1, q2);
    }
    r.h11 = h11;
    r.diagonal = diag;
    r.off_diagonal = off;
    r.total = diag + off;
    const Real first(w.first, bits), second(w.second, bits);
    r.diagonal_ratio = diag / (h11 * first);
    r.diagonal_delta = (b1 + b2 + diag_tail) / (h11 * first).to_double();
    r.correction = r.total - h11 * (second + first);
    r.certified_tail = tail;
    r.estimated_error = est;
    r.error_budget = {
        {"diagonal H[p^2,p^2] - H[1,1]", std::fabs(t1.to_double()), b1, false},
        {"diagonal 2 H[p^2,1]", std::fabs(t2.to_double()), b2, false},
        {"off-diagonal 2 (H[p1^2,1] + H[p2^2,1])", std::fabs(t3.to_double()), b3, false},
        {"off-diagonal 2 H[p1^2,p2^2]", std::fabs(t4.to_double()), b4, false},
        {"geometric-side tails", tail, tail, true},
        {"bessel recurrence estimate", est, est, false},
    };
    r.distinct_h_values = 0;
    {
        std::vector<std::pair<u64, u64>> norm;
        for (auto [m, n] : requests) norm.push_back({std::min(m, n), std::max(m, n)});
        std::sort(norm.begin(), norm.end());
        r.distinct_h_values = static_cast<u64>(std::unique(norm.begin(), norm.end()) - norm.begin());
    }
    r.cache_hits = ev.cache_hits() - hits0;
    r.cache_misses = ev.cache_misses() - misses0;
    return r;
}

SecondMomentReport harmonic_second_moment(int k, std::uint64_t N, double eta, double tolerance, int digits,
                                          int threads) {
    PeterssonEvaluator::Options opt;
    opt.digits = digits;
    opt.tolerance = tolerance;
    opt.threads = threads;
    PeterssonEvaluator ev(opt);
    return harmonic_second_moment(k, N, eta, ev);
}

LargeWeightReport large_weight_report(int k, std::uint64_t N, double eta, PeterssonEvaluator& evaluator) {
    LargeWeightReport t;
    t.moment = harmonic_second_moment(k, N, eta, evaluator);
    const auto& m = t.moment;
    const double Nd = static_cast<double>(N);
    const Real scale = m.h11 * static_cast<long>(N);
    t.normalized_total = m.total / scale;
    t.unconditional_target = (m.exact_prime_square_moment.get_d() + m.exact_prime_first_moment.get_d()) / Nd;
    t.conjectural_target = eta * eta + 2 * eta;
    const double norm = t.normalized_total.to_double();
    // (total - H11 target N) / (N H11), computed without cancellation in doubles.
    t.discrepancy_unconditional = std::fabs((m.correction / scale).to_double());
    t.discrepancy_conjectural = std::fabs(norm - t.conjectural_target);
    double bounds = 0;
    for (const auto& b : m.error_budget)
        if (!b.certified) bounds += b.bound;
    const double s = scale.to_double();
    t.certified_part = m.certified_tail / s;
    t.heuristic_part = bounds / s;
    t.correction_budget = t.certified_part + t.heuristic_part;
    t.within_budget = t.discrepancy_unconditional <= t.correction_budget;
    t.in_regime = m.in_regime;
    return t;
}

GallagherTable gallagher_report(std::uint64_t N, const std::vector<double>& etas, unsigned j_max, int threads,
                                std::uint64_t hl_p_max) {
    if (N < 2 || N > 100'000'000) throw ConfigError("gallagher_report: N must lie in [2, 10^8]");
    if (j_max < 1 || j_max > 3) throw ConfigError("gallagher_report: j_max must be 1, 2 or 3");
    if (etas.empty()) throw ConfigError("gallagher_report: no eta values");
    GallagherTable out;
    out.N = N;
    out.j_max = j_max;
    out.hl_p_max = hl_p_max;
    const PrimeTable table = sieve_range(0, N + 1, threads);
    const double logN = std::log(static_cast<double>(N));
    for (double eta : etas) {
        if (!(eta > 0)) throw ConfigError("gallagher_report: eta must be positive");
        const double y = eta * logN;
        const WindowSeries series = window_counts(table, N, y, threads);
        // HL sums over increasing offset tuples, by size r.
        std::vector<double> hl_by_r(j_max + 1, 0), tail_by_r(j_max + 1, 0);
        std::vector<u64> d;
        auto rec = [&](auto&& self, u64 start) -> void {
            if (!d.empty()) {
                const auto h = hl_prediction(TupleVector(d), N, hl_p_max);
                hl_by_r[d.size()] += h.value;
                tail_by_r[d.size()] += h.value * h.series.tail_bound / std::max(h.series.value, 1e-300);
            }
            if (d.size() == j_max) return;
            for (u64 x = start; x <= series.width; ++x) {
                d.push_back(x);
                self(self, x + 1);
                d.pop_back();
            }
        };
        rec(rec, 1);
        for (unsigned j = 1; j <= j_max; ++j) {
            GallagherRow row;
            row.eta = eta;
            row.j = j;
            row.y = y;
            row.width = series.width;
            row.moment = window_moment(series, j);
            row.empirical = row.moment.get_d() / static_cast<double>(N);
            row.gallagher = gallagher_moment(j, eta).m.to_double();
            row.relative_error = std::fabs(row.empirical - row.gallagher) / row.gallagher;
            row.identity_exact = moment_identity_check(N, y, j, threads).equal;
            for (unsigned rr = 1; rr <= j; ++rr) {
                const double sig = surjections(j, rr).get_d();
                row.hl_conjectural += sig * hl_by_r[rr] / static_cast<double>(N);
                row.hl_tail += sig * tail_by_r[rr] / static_cast<double>(N);
            }
            out.rows.push_back(row);
        }
    }
    return out;
}

}  // namespace hwl
