#include "hwl/petersson.hpp"

#include "hwl/bessel.hpp"
#include "hwl/errors.hpp"
#include "hwl/kloosterman.hpp"
#include "hwl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hwl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// d(c) for c <= limit, shared and grown on demand.
std::shared_ptr<const std::vector<std::uint32_t>> divisor_counts(std::uint64_t limit) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> table;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || table->size() <= limit) {
        const std::uint64_t size = std::max<std::uint64_t>(limit + 1, table ? 2 * table->size() : 1024);
        auto t = std::make_shared<std::vector<std::uint32_t>>(size, 0);
        for (std::uint64_t d = 1; d < size; ++d)
            for (std::uint64_t m = d; m < size; m += d) ++(*t)[m];
        table = t;
    }
    return table;
}

std::pair<std::uint64_t, std::uint64_t> normalized(std::uint64_t m, std::uint64_t n) {
    return {std::min(m, n), std::max(m, n)};
}

Real real_from_ld(long double v, mpfr_bits bits) {
    Real r(bits);
    mpfr_set_ld(r.raw(), v, MPFR_RNDN);
    return r;
}

}  // namespace

TruncationPlan plan_truncation(std::uint64_t m, std::uint64_t n, int k, double tolerance, std::uint64_t c_max,
                               std::uint64_t c_budget) {
    if (m < 1 || n < 1) throw ConfigError("geometric_side: m and n must be positive");
    if (k < 12 || k % 2 != 0) throw ConfigError("geometric_side: weight must be even and at least 12");
    if (!(tolerance > 0)) throw ConfigError("geometric_side: tolerance must be positive");
    const double nu = k - 1;
    const double X = 4 * kPi * std::sqrt(static_cast<double>(m) * static_cast<double>(n));
    const std::uint64_t g = std::gcd(m, n);
    // Beyond C2: |S| <= 2 c sqrt(g) (d(c) <= 2 sqrt c) and |J| <= (x/2)^nu / nu!, so
    // sum_{c > C2} 2 pi |S|/c |J| <= 4 pi sqrt(g) (X/2)^nu / nu! * C2^{1-nu} / (nu - 1).
    auto log_analytic = [&](double C) {
        return std::log(4 * kPi) + 0.5 * std::log(static_cast<double>(g)) + nu * std::log(X / 2) -
               std::lgamma(nu + 1) + (1 - nu) * std::log(C) - std::log(nu - 1);
    };
    const double target = std::log(tolerance / 8);
    const std::uint64_t cap = 4 * std::max(c_budget, c_max);
    std::uint64_t C2 = std::max<std::uint64_t>(64, c_max);
    while (log_analytic(static_cast<double>(C2)) > target) {
        if (2 * C2 > cap) {
            if (c_max == 0) {
                // Where the analytic tail alone reaches tolerance / 8.
                const double need = std::exp((log_analytic(1.0) - target) / (nu - 1));
                std::ostringstream msg;
                msg << "geometric_side: tolerance " << tolerance << " for H[" << m << "," << n << "] at k=" << k
                    << " needs c_max near " << std::setprecision(3) << need << ", beyond the budget " << c_budget;
                throw ToleranceError(msg.str());
            }
            break;
        }
        C2 *= 2;
    }
    const auto dc = divisor_counts(C2);
    std::vector<double> T(C2 + 1, 0), logb(C2 + 1, 0);
    for (std::uint64_t c = 1; c <= C2; ++c) {
        const double cd = static_cast<double>(c);
        logb[c] = log_bessel_bound(k - 1, X / cd);
        const double gc = static_cast<double>(std::gcd(g, c));
        const double logT = std::log(2 * kPi) + std::log(static_cast<double>((*dc)[c])) + 0.5 * std::log(cd * gc) -
                            std::log(cd) + logb[c];
        T[c] = std::exp(logT);
    }
    std::vector<double> suffix(C2 + 1, 0);
    for (std::uint64_t c = C2; c >= 1; --c) suffix[c - 1] = suffix[c] + T[c];
    const double analytic = std::exp(log_analytic(static_cast<double>(C2)));

    TruncationPlan plan;
    if (c_max == 0) {
        std::uint64_t C = 1;
        while (C < C2 && suffix[C] + analytic > tolerance / 2) ++C;
        if (C > c_budget) {
            std::ostringstream msg;
            msg << "geometric_side: tolerance " << tolerance << " for H[" << m << "," << n << "] at k=" << k
                << " needs c_max=" << C << ", above the budget " << c_budget;
            throw ToleranceError(msg.str());
        }
        plan.c_max = C;
    } else {
        plan.c_max = c_max;
    }
    plan.tail = suffix[plan.c_max] + analytic;
    const double threshold = tolerance / (4 * static_cast<double>(plan.c_max));
    plan.evaluate.assign(plan.c_max + 1, 0);
    plan.log_bessel.assign(logb.begin(), logb.begin() + plan.c_max + 1);
    for (std::uint64_t c = 1; c <= plan.c_max; ++c) {
        if (T[c] > threshold) {
            plan.evaluate[c] = 1;
        } else {
            plan.skipped += T[c];
        }
    }
    if (c_max != 0 && plan.tail + plan.skipped > tolerance) {
        std::ostringstream msg;
        msg << "geometric_side: tail bound " << plan.tail + plan.skipped << " exceeds tolerance " << tolerance
            << "; increase c_max";
        throw ToleranceError(msg.str());
    }
    return plan;
}

PeterssonEvaluator::PeterssonEvaluator() : PeterssonEvaluator(Options{}) {}

PeterssonEvaluator::PeterssonEvaluator(Options options) : options_(options) {
    if (options_.digits < 15) throw ConfigError("PeterssonEvaluator: digits must be at least 15");
    if (!(options_.tolerance > 0)) throw ConfigError("PeterssonEvaluator: tolerance must be positive");
}

std::vector<GeometricSideValue> PeterssonEvaluator::evaluate(const std::vector<Pair>& pairs, int k,
                                                             const std::vector<TruncationPlan>& plans) {
    const mpfr_bits bits = bits_for_digits(options_.digits) + 32;
    const std::size_t P = pairs.size();
    const long nu = k - 1;
    const double tol = options_.tolerance;

    std::vector<Real> X, sums;
    std::vector<double> abs_sum(P, 0), cert(P, 0), est(P, 0);
    std::vector<std::uint64_t> evaluated(P, 0);
    std::uint64_t maxC = 0;
    for (std::size_t i = 0; i < P; ++i) {
        X.push_back(pi(bits) * 4L * sqrt(Real(static_cast<long>(pairs[i].first), bits) *
                                         Real(static_cast<long>(pairs[i].second), bits)));
        sums.emplace_back(0L, bits);
        maxC = std::max(maxC, plans[i].c_max);
    }

    struct Job {
        std::size_t i;
        KloostermanEntry* entry;
        bool use_ld;
        bool compute_s;
        Real term;
        double cert = 0, est = 0;
    };
    for (std::uint64_t c = 1; c <= maxC; ++c) {
        std::vector<Job> jobs;
        bool need_modulus = false;
        for (std::size_t i = 0; i < P; ++i) {
            if (c > plans[i].c_max || !plans[i].evaluate[c]) continue;
            const double cd = static_cast<double>(c);
            const double jbound = std::exp(plans[i].log_bessel[c]);
            // phi(c) <= c in the long double error bound.
            const double ld_err = cd * (1e-18 + (cd / 2 + 2) * 6e-20);
            const bool use_ld = 2 * kPi / cd * jbound * ld_err <= tol / (16 * static_cast<double>(plans[i].c_max));
            auto& entry = kloosterman_[{pairs[i].first, pairs[i].second, c}];
            const bool compute = use_ld ? !entry.has_ld && !entry.real : !entry.real;
            need_modulus = need_modulus || compute;
            jobs.push_back(Job{i, &entry, use_ld, compute, Real(bits)});
        }
        if (jobs.empty()) continue;
        // Kloosterman sums serially (the modulus tables are lazily built), Bessel values in parallel.
        std::unique_ptr<KloostermanModulus> mod;
        if (need_modulus) mod = std::make_unique<KloostermanModulus>(c);
        for (auto& job : jobs) {
            if (!job.compute_s) continue;
            const auto [m, n] = pairs[job.i];
            KloostermanEntry& e = *job.entry;
            if (job.use_ld) {
                e.ld = mod->sum_ld(m, n, &e.ld_error);
                e.has_ld = true;
            } else {
                e.real = std::make_unique<Real>(mod->sum(m, n, bits));
            }
        }
        auto work = [&](std::size_t j) {
            Job& job = jobs[j];
            const KloostermanEntry& e = *job.entry;
            Real S = e.real ? *e.real : real_from_ld(e.ld, bits);
            const double s_err = e.real ? 0.0 : e.ld_error;
            const BesselValue J = bessel_kernel(nu, X[job.i] / static_cast<long>(c), bits);
            job.term = S * J.value / static_cast<long>(c);
            const double jbound = std::exp(plans[job.i].log_bessel[c]);
            const double cd = static_cast<double>(c);
            const double s_abs = std::fabs(S.to_double()) + s_err;
            job.cert = jbound * s_err / cd;
            if (J.certified) {
                job.cert += s_abs * J.error_bound / cd;
            } else {
                job.est = s_abs * J.error_bound / cd;
            }
        };
        parallel_for(jobs.size(), jobs.size() > 1 ? options_.threads : 1, work);
        for (auto& job : jobs) {
            sums[job.i] += job.term;
            abs_sum[job.i] += std::fabs(job.term.to_double());
            cert[job.i] += job.cert;
            est[job.i] += job.est;
            ++evaluated[job.i];
        }
    }

    std::vector<GeometricSideValue> out;
    const long sign = (k / 2) % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < P; ++i) {
        GeometricSideValue v;
        v.m = pairs[i].first;
        v.n = pairs[i].second;
        v.k = k;
        v.c_max = plans[i].c_max;
        v.digits = options_.digits;
        v.tolerance = tol;
        v.value = pi(bits) * 2L * sums[i] * sign;
        if (v.m == v.n) v.value += Real(1L, bits);
        const double rounding =
            2 * kPi * abs_sum[i] * static_cast<double>(plans[i].c_max + 8) * std::ldexp(1.0, -static_cast<int>(bits) + 4);
        v.tail_bound = plans[i].tail + plans[i].skipped + 2 * kPi * cert[i] + rounding;
        v.estimated_error = 2 * kPi * est[i];
        v.certified = est[i] == 0;
        v.terms_evaluated = evaluated[i];
        out.push_back(std::move(v));
    }
    return out;
}

const GeometricSideValue& PeterssonEvaluator::value(std::uint64_t m, std::uint64_t n, int k) {
    const auto [a, b] = normalized(m, n);
    auto it = cache_.find({a, b, k});
    if (it != cache_.end()) {
        ++hits_;
        return it->second;
    }
    prefetch({{a, b}}, k);
    return cache_.at({a, b, k});
}

void PeterssonEvaluator::prefetch(const std::vector<Pair>& pairs, int k) {
    std::vector<Pair> todo;
    for (const auto& [m, n] : pairs) {
        const auto key = normalized(m, n);
        if (cache_.count({key.first, key.second, k})) continue;
        if (std::find(todo.begin(), todo.end(), key) == todo.end()) todo.push_back(key);
    }
    if (todo.empty()) return;
    std::vector<TruncationPlan> plans;
    for (const auto& [m, n] : todo) plans.push_back(plan_truncation(m, n, k, options_.tolerance, 0, options_.c_budget));
    auto values = evaluate(todo, k, plans);
    for (auto& v : values) {
        ++misses_;
        cache_.emplace(std::make_tuple(v.m, v.n, k), std::move(v));
    }
}

GeometricSideValue PeterssonEvaluator::compute(std::uint64_t m, std::uint64_t n, int k, std::uint64_t c_max) {
    const auto key = normalized(m, n);
    const auto plan = plan_truncation(key.first, key.second, k, options_.tolerance, c_max, options_.c_budget);
    return evaluate({key}, k, {plan}).front();
}

GeometricSideValue geometric_side(std::uint64_t m, std::uint64_t n, int k, std::uint64_t c_max, int digits,
                                  double tolerance) {
    PeterssonEvaluator::Options opt;
    opt.digits = digits;
    opt.tolerance = tolerance;
    opt.c_budget = std::max<std::uint64_t>(opt.c_budget, c_max);
    PeterssonEvaluator ev(opt);
    return ev.compute(m, n, k, c_max);
}

double trace_error_bound(std::uint64_t m, std::uint64_t n, int k) {
    if (m < 1 || n < 1) throw ConfigError("trace_error_bound: m and n must be positive");
    if (k < 1) throw ConfigError("trace_error_bound: weight must be positive");
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    const double l = std::log(3 * mn);
    return l * l * static_cast<double>(divisor_count(std::gcd(m, n))) * std::pow(mn, 0.25) /
           std::sqrt(static_cast<double>(k));
}

const Real& HarmonicWeights::weight_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return weights[i];
    throw ConfigError("no harmonic weight for form " + label);
}

namespace {

// Inverse by Gauss-Jordan with partial pivoting; throws on a singular matrix.
std::vector<std::vector<Real>> invert(std::vector<std::vector<Real>> a, mpfr_bits bits) {
    const std::size_t d = a.size();
    std::vector<std::vector<Real>> inv(d, std::vector<Real>(d, Real(0L, bits)));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = Real(1L, bits);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
        if (a[piv][col].is_zero()) throw PrecisionError("extract_weights: singular system; choose different pairs");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        const Real p = a[col][col];
        for (std::size_t j = 0; j < d; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Real f = a[r][col];
            for (std::size_t j = 0; j < d; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Real inf_norm(const std::vector<std::vector<Real>>& a, mpfr_bits bits) {
    Real best(0L, bits);
    for (const auto& row : a) {
        Real s(0L, bits);
        for (const auto& v : row) s += abs(v);
        best = max(best, s);
    }
    return best;
}

}  // namespace

HarmonicWeights extract_weights(int k, const std::vector<Eigenform>& forms,
                                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& fit_pairs,
                                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& held_out,
                                PeterssonEvaluator& evaluator) {
    const std::size_t d = forms.size();
    if (d == 0) throw ConfigError("extract_weights: no forms");
    if (d > 6) throw ConfigError("extract_weights: at most 6 forms");
    if (fit_pairs.size() < d) throw ConfigError("extract_weights: need at least as many pairs as forms");
    if (held_out.size() < 3) throw ConfigError("extract_weights: need at least 3 held-out pairs");
    for (const auto& f : forms)
        if (f.weight() != k) throw ConfigError("extract_weights: form weight differs from k");
    const mpfr_bits bits = bits_for_digits(evaluator.options().digits) + 32;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> all(fit_pairs);
    all.insert(all.end(), held_out.begin(), held_out.end());
    evaluator.prefetch(all, k);

    auto row = [&](std::uint64_t m, std::uint64_t n) {
        std::vector<Real> r;
        for (const auto& f : forms) r.push_back(f.lambda(m, bits) * f.lambda(n, bits));
        return r;
    };
    std::vector<std::vector<Real>> A;
    std::vector<Real> b;
    for (const auto& [m, n] : fit_pairs) {
        A.push_back(row(m, n));
        b.push_back(evaluator.value(m, n, k).value);
    }
    // Normal equations when overdetermined.
    std::vector<std::vector<Real>> G(d, std::vector<Real>(d, Real(0L, bits)));
    std::vector<Real> rhs(d, Real(0L, bits));
    const bool square = A.size() == d;
    for (std::size_t i = 0; i < d; ++i) {
        if (square) {
            for (std::size_t j = 0; j < d; ++j) G[i][j] = A[i][j];
            rhs[i] = b[i];
        } else {
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t r = 0; r < A.size(); ++r) G[i][j] += A[r][i] * A[r][j];
            for (std::size_t r = 0; r < A.size(); ++r) rhs[i] += A[r][i] * b[r];
        }
    }
    const auto Ginv = invert(G, bits);
    double cond = (inf_norm(G, bits) * inf_norm(Ginv, bits)).to_double();
    if (!square) cond = std::sqrt(cond);
    if (!(cond <= 1e12)) {
        throw PrecisionError("extract_weights: ill-conditioned system (condition " + std::to_string(cond) +
                             "); choose different pairs");
    }
    HarmonicWeights out;
    out.k = k;
    out.fit_pairs = fit_pairs;
    out.held_out = held_out;
    out.condition = cond;
    for (std::size_t i = 0; i < d; ++i) {
        Real w(0L, bits);
        for (std::size_t j = 0; j < d; ++j) w += Ginv[i][j] * rhs[j];
        if (w.sign() <= 0) throw PrecisionError("extract_weights: non-positive weight for " + forms[i].label());
        out.labels.push_back(forms[i].label());
        out.weights.push_back(w);
    }
    out.residual = Real(0L, bits);
    for (const auto& [m, n] : held_out) {
        const auto r = row(m, n);
        Real s(0L, bits);
        for (std::size_t i = 0; i < d; ++i) s += out.weights[i] * r[i];
        out.residual = max(out.residual, abs(s - evaluator.value(m, n, k).value));
    }
    return out;
}

Real scaled_lambda(const Eigenform& f, const HarmonicWeights& weights, std::uint64_t p, mpfr_bits bits) {
    const Real& w = weights.weight_of(f.label());
    const Real scale = sqrt(sqrt(Real(static_cast<long>(f.weight()), bits) / 12L));
    return scale * sqrt(w) * f.lambda(p, bits);
}

}  // namespace hwl
