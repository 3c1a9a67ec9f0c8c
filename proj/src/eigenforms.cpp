#include "hwl/eigenforms.hpp"

#include "hwl/errors.hpp"
#include "hwl/modforms.hpp"
#include "hwl/primes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace hwl {

namespace {

bool is_prime_small(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

mpz_class pow_ui(std::uint64_t b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

}  // namespace

Eigenform::Eigenform(int k, std::shared_ptr<const Basis> basis, std::vector<QuadraticNumber> coords,
                     std::string label)
    : k_(k), basis_(std::move(basis)), exact_coords_(std::move(coords)), label_(std::move(label)) {
    if (!basis_ || basis_->size() != exact_coords_.size() || basis_->empty()) {
        throw std::invalid_argument("Eigenform: coordinates do not match the basis");
    }
}

Eigenform::Eigenform(int k, std::shared_ptr<const Basis> basis, std::vector<Real> coords, std::string label)
    : k_(k), basis_(std::move(basis)), numeric_coords_(std::move(coords)), label_(std::move(label)) {
    if (!basis_ || basis_->size() != numeric_coords_.size() || basis_->empty()) {
        throw std::invalid_argument("Eigenform: coordinates do not match the basis");
    }
}

Eigenform Eigenform::from_table(int k, std::vector<QuadraticNumber> table, std::string label) {
    if (table.size() < 2) throw std::invalid_argument("Eigenform: empty eigenvalue table");
    Eigenform f;
    f.k_ = k;
    f.table_ = std::move(table);
    f.label_ = std::move(label);
    return f;
}

std::size_t Eigenform::precision() const {
    if (basis_) return basis_->front().precision();
    return table_.size() - 1;
}

mpfr_bits Eigenform::numeric_bits() const {
    return numeric_coords_.empty() ? 0 : numeric_coords_.front().precision();
}

void Eigenform::check_index(std::uint64_t n) const {
    if (n < 1) throw std::invalid_argument("Eigenform: n must be positive");
    if (n > precision()) {
        throw PrecisionError("Eigenform " + label_ + ": a(" + std::to_string(n) +
                             ") beyond available precision " + std::to_string(precision()));
    }
}

QuadraticNumber Eigenform::a_exact(std::uint64_t n) const {
    check_index(n);
    if (!exact()) throw PrecisionError("Eigenform " + label_ + ": exact values unavailable (numeric form)");
    if (!basis_) return table_[n];
    QuadraticNumber s;
    for (std::size_t i = 0; i < exact_coords_.size(); ++i) {
        const mpz_class& b = (*basis_)[i][n];
        if (b != 0) s += exact_coords_[i] * QuadraticNumber(b);
    }
    return s;
}

QuadraticNumber Eigenform::lambda_squared_exact(std::uint64_t n) const {
    const QuadraticNumber a = a_exact(n);
    return a * a / QuadraticNumber(pow_ui(n, k_ - 1));
}

Real Eigenform::a(std::uint64_t n, mpfr_bits bits) const {
    check_index(n);
    if (exact()) return a_exact(n).to_real(bits);
    const mpfr_bits wb = std::max(bits, numeric_bits());
    Real s(0L, wb);
    for (std::size_t i = 0; i < numeric_coords_.size(); ++i) {
        const mpz_class& b = (*basis_)[i][n];
        if (b != 0) s += numeric_coords_[i] * Real(b, wb);
    }
    s.set_precision(bits);
    return s;
}

Real Eigenform::lambda(std::uint64_t n, mpfr_bits bits) const {
    const mpfr_bits wb = bits + 32;
    Real v = a(n, wb) / pow(sqrt(Real(static_cast<long>(n), wb)), static_cast<long>(k_ - 1));
    v.set_precision(bits);
    return v;
}

Real Eigenform::lambda_squared(std::uint64_t n, mpfr_bits bits) const {
    if (exact()) return lambda_squared_exact(n).to_real(bits);
    const Real l = lambda(n, bits + 16);
    Real v = l * l;
    v.set_precision(bits);
    return v;
}

std::vector<mpz_class> characteristic_polynomial(const Matrix<mpz_class>& A) {
    const std::size_t d = A.rows();
    if (A.cols() != d) throw std::invalid_argument("characteristic_polynomial: matrix must be square");
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(A M_k) / k.
    std::vector<mpz_class> c(d + 1, 0);
    c[d] = 1;
    Matrix<mpz_class> Mk(d, d, mpz_class(0));
    for (std::size_t k = 1; k <= d; ++k) {
        Mk = A * Mk;
        for (std::size_t i = 0; i < d; ++i) Mk(i, i) += c[d - k + 1];
        const mpz_class tr = (A * Mk).trace();
        if (!mpz_divisible_ui_p(tr.get_mpz_t(), k)) {
            throw std::logic_error("characteristic_polynomial: inexact division");
        }
        c[d - k] = -tr / static_cast<unsigned long>(k);
    }
    return c;
}

namespace {

// Horner evaluation of p and p'.
void eval_poly(const std::vector<Real>& c, const Real& x, Real& p, Real& dp) {
    const mpfr_bits bits = x.precision();
    p = Real(0L, bits);
    dp = Real(0L, bits);
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[i];
    }
}

Real newton_from_above(const std::vector<Real>& c, Real x, mpfr_bits bits) {
    Real p(bits), dp(bits);
    const Real eps = pow2(-static_cast<long>(bits) + 16, bits);
    int settle = -1;
    for (int iter = 0; iter < 200000; ++iter) {
        eval_poly(c, x, p, dp);
        if (p.is_zero()) return x;
        if (dp.is_zero()) throw PrecisionError("eigenforms: Newton iteration hit a critical point");
        const Real dx = p / dp;
        x -= dx;
        if (settle >= 0) {
            if (++settle >= 3) return x;
        } else if (abs(dx) <= eps * (abs(x) + Real(1L, bits))) {
            settle = 0;
        }
    }
    throw PrecisionError("eigenforms: Newton iteration did not converge");
}

// Real roots, ascending, of a monic integer polynomial whose roots are all real and simple.
std::vector<Real> real_roots(const std::vector<mpz_class>& coeffs, mpfr_bits bits) {
    const std::size_t m = coeffs.size() - 1;
    std::vector<Real> c;
    for (const auto& v : coeffs) c.emplace_back(v, bits);
    // Fujiwara: |z| <= 2 max_i |c_{m-i}|^{1/i}.
    long e = 0;
    for (std::size_t i = 1; i <= m; ++i) {
        if (coeffs[m - i] == 0) continue;
        const long b = static_cast<long>(mpz_sizeinbase(coeffs[m - i].get_mpz_t(), 2));
        e = std::max(e, (b + static_cast<long>(i) - 1) / static_cast<long>(i));
    }
    Real start = pow2(e + 1, bits) + Real(1L, bits);

    std::vector<Real> roots;
    std::vector<Real> q = c;
    for (std::size_t found = 0; found < m; ++found) {
        Real r = newton_from_above(q, start, bits);
        roots.push_back(r);
        // Deflate q by (x - r).
        std::vector<Real> next(q.size() - 1, Real(0L, bits));
        next.back() = q.back();
        for (std::size_t i = q.size() - 2; i >= 1; --i) next[i - 1] = q[i] + r * next[i];
        q = std::move(next);
        start = r;
    }
    // Polish on the undeflated polynomial.
    Real p(bits), dp(bits);
    for (auto& r : roots) {
        for (int it = 0; it < 4; ++it) {
            eval_poly(c, r, p, dp);
            if (p.is_zero() || dp.is_zero()) break;
            r -= p / dp;
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Real& a, const Real& b) { return a < b; });
    Real scale(1L, bits);
    for (const auto& r : roots) scale = max(scale, abs(r));
    const Real gap_floor = scale * pow2(-static_cast<long>(bits) / 2, bits);
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (roots[i] - roots[i - 1] <= gap_floor) {
            throw PrecisionError("eigenforms: repeated Hecke eigenvalue, cannot separate eigenforms");
        }
    }
    return roots;
}

std::vector<Real> solve_real(Matrix<Real> B, std::vector<Real> rhs, mpfr_bits bits) {
    const std::size_t d = B.rows();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (abs(B(r, col)) > abs(B(piv, col))) piv = r;
        if (piv != col) {
            for (std::size_t j = 0; j < d; ++j) std::swap(B(col, j), B(piv, j));
            std::swap(rhs[col], rhs[piv]);
        }
        if (B(col, col).is_zero()) B(col, col) = pow2(-static_cast<long>(bits), bits);
        for (std::size_t r = col + 1; r < d; ++r) {
            if (B(r, col).is_zero()) continue;
            const Real f = B(r, col) / B(col, col);
            for (std::size_t j = col; j < d; ++j) B(r, j) -= f * B(col, j);
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Real> x(d, Real(0L, bits));
    for (std::size_t i = d; i-- > 0;) {
        Real s = rhs[i];
        for (std::size_t j = i + 1; j < d; ++j) s -= B(i, j) * x[j];
        x[i] = s / B(i, i);
    }
    return x;
}

std::vector<Real> numeric_eigenvector(const Matrix<mpz_class>& A, const Real& lam, mpfr_bits bits) {
    const std::size_t d = A.rows();
    Matrix<Real> B(d, d, Real(0L, bits));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) B(i, j) = Real(A(i, j), bits);
    for (std::size_t i = 0; i < d; ++i) B(i, i) -= lam;
    std::vector<Real> z(d, Real(1L, bits));
    for (int it = 0; it < 3; ++it) {
        z = solve_real(B, z, bits);
        Real big(0L, bits);
        for (const auto& v : z) big = max(big, abs(v));
        if (big.is_zero()) throw PrecisionError("eigenforms: inverse iteration collapsed");
        for (auto& v : z) v /= big;
    }
    if (z[0].is_zero()) throw PrecisionError("eigenforms: eigenvector has zero first coordinate");
    const Real first = z[0];
    for (auto& v : z) v /= first;
    return z;
}

std::vector<QuadraticNumber> exact_eigenvector(const Matrix<mpz_class>& A, const QuadraticNumber& lam) {
    const std::size_t d = A.rows();
    if (d == 1) return {QuadraticNumber(1)};
    // (A - lam) x = 0 with x_0 = 1: unknowns x_1..x_{d-1}, right side -(column 0).
    const std::size_t u = d - 1;
    std::vector<std::vector<QuadraticNumber>> R(d, std::vector<QuadraticNumber>(u + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 1; j < d; ++j) R[i][j - 1] = QuadraticNumber(A(i, j)) - (i == j ? lam : QuadraticNumber(0));
        R[i][u] = -(QuadraticNumber(A(i, 0)) - (i == 0 ? lam : QuadraticNumber(0)));
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < u; ++col) {
        std::size_t piv = row;
        while (piv < d && R[piv][col].is_zero()) ++piv;
        if (piv == d) throw PrecisionError("eigenforms: eigenspace is not one-dimensional");
        std::swap(R[row], R[piv]);
        const QuadraticNumber inv = QuadraticNumber(1) / R[row][col];
        for (auto& v : R[row]) v *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == row || R[r][col].is_zero()) continue;
            const QuadraticNumber f = R[r][col];
            for (std::size_t j = col; j <= u; ++j) R[r][j] -= f * R[row][j];
        }
        ++row;
    }
    for (std::size_t r = row; r < d; ++r) {
        if (!R[r][u].is_zero()) throw PrecisionError("eigenforms: inconsistent eigenvector system");
    }
    std::vector<QuadraticNumber> x{QuadraticNumber(1)};
    for (std::size_t j = 0; j < u; ++j) x.push_back(R[j][u]);
    return x;
}

std::string form_label(int k, std::size_t i) {
    std::string s = std::to_string(k) + ".";
    if (i < 26) return s + static_cast<char>('a' + i);
    return s + std::to_string(i + 1);
}

void verify_exact(const Eigenform& f, const Basis& basis) {
    const auto& x = f.exact_coordinates();
    for (std::uint64_t n : {2, 3, 5}) {
        const Matrix<mpz_class> A = hecke_operator_matrix(basis, n);
        const QuadraticNumber an = f.a_exact(n);
        for (std::size_t i = 0; i < x.size(); ++i) {
            QuadraticNumber s;
            for (std::size_t j = 0; j < x.size(); ++j) s += QuadraticNumber(A(i, j)) * x[j];
            if (s != an * x[i]) {
                throw PrecisionError("eigenforms: " + f.label() + " is not an eigenvector of T_" + std::to_string(n));
            }
        }
    }
}

void verify_numeric(const Eigenform& f, const Basis& basis, int k) {
    const auto& x = f.numeric_coordinates();
    const mpfr_bits bits = f.numeric_bits();
    const Real tol(1e-40, bits);
    for (std::uint64_t n : {2, 3, 5}) {
        const Matrix<mpz_class> A = hecke_operator_matrix(basis, n);
        const Real an = f.a(n, bits);
        Real worst(0L, bits), scale(0L, bits);
        for (std::size_t i = 0; i < x.size(); ++i) {
            Real s(0L, bits);
            for (std::size_t j = 0; j < x.size(); ++j) s += Real(A(i, j), bits) * x[j];
            worst = max(worst, abs(s - an * x[i]));
            scale = max(scale, abs(an * x[i]));
        }
        if (worst > tol * max(scale, Real(1L, bits))) {
            throw PrecisionError("eigenforms: " + f.label() + " fails the T_" + std::to_string(n) +
                                 " residual check (" + (worst / scale).str(5) + ")");
        }
    }
    for (std::uint64_t p : {2, 3}) {
        if (p * p > f.precision()) continue;
        const Real ap = f.a(p, bits);
        const Real pk(pow_ui(p, k - 1), bits);
        const Real r = abs(ap * ap - f.a(p * p, bits) - pk) / pk;
        if (r > tol) {
            throw PrecisionError("eigenforms: " + f.label() + " fails the Hecke relation at p=" +
                                 std::to_string(p) + " (" + r.str(5) + ")");
        }
    }
}

}  // namespace

std::vector<Eigenform> eigenforms(int k, std::size_t M, int digits, const std::string& cache_dir) {
    const int d = dim_cusp(k);
    if (d == 0) return {};
    if (M < static_cast<std::size_t>(std::max(5 * d, 9))) {
        throw PrecisionError("eigenforms: weight " + std::to_string(k) + " needs precision at least " +
                             std::to_string(std::max(5 * d, 9)));
    }
    auto basis = std::make_shared<const Basis>(victor_miller_basis_cached(k, M, cache_dir));
    const Matrix<mpz_class> A = hecke_operator_matrix(*basis, 2);

    std::vector<Eigenform> forms;
    if (d <= 2) {
        std::vector<QuadraticNumber> eig;
        if (d == 1) {
            eig.emplace_back(A(0, 0));
        } else {
            const mpz_class t = A(0, 0) + A(1, 1);
            const mpz_class det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
            const mpz_class disc = t * t - 4 * det;
            if (disc <= 0) throw PrecisionError("eigenforms: T_2 has a repeated or non-real eigenvalue");
            mpz_class s, D;
            split_square(disc, s, D);
            const mpq_class half_t(t, 2);
            if (D == 1) {
                eig.emplace_back(half_t - mpq_class(s, 2));
                eig.emplace_back(half_t + mpq_class(s, 2));
            } else {
                eig.emplace_back(half_t, mpq_class(-s, 2), D);
                eig.emplace_back(half_t, mpq_class(s, 2), D);
            }
        }
        for (std::size_t i = 0; i < eig.size(); ++i) {
            forms.emplace_back(k, basis, exact_eigenvector(A, eig[i]), form_label(k, i));
            verify_exact(forms.back(), *basis);
        }
        return forms;
    }

    digits = std::max(digits, 60);
    std::size_t coeff_bits = 0;
    for (const auto& g : *basis)
        for (const auto& c : g.coeffs())
            if (c != 0) coeff_bits = std::max(coeff_bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    // Cancellation in sum_i x_i b_i(n) can cost up to the size of the basis coefficients.
    const mpfr_bits bits = bits_for_digits(digits) + 64 + static_cast<mpfr_bits>(coeff_bits);
    const std::vector<Real> roots = real_roots(characteristic_polynomial(A), bits);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        forms.emplace_back(k, basis, numeric_eigenvector(A, roots[i], bits), form_label(k, i));
        verify_numeric(forms.back(), *basis, k);
    }
    return forms;
}

Real window_eigen_sum(const Eigenform& f, std::uint64_t n, double y, mpfr_bits bits) {
    const std::uint64_t w = window_width(y);
    if (n > f.precision()) throw PrecisionError("window_eigen_sum: eigenvalues needed up to " + std::to_string(n));
    Real s(0L, bits);
    const std::uint64_t lo = n >= w ? n - w + 1 : 1;
    for (std::uint64_t p = lo; p <= n; ++p)
        if (is_prime_small(p)) s += f.lambda_squared(p, bits);
    return s;
}

QuadraticNumber window_eigen_sum_exact(const Eigenform& f, std::uint64_t n, double y) {
    const std::uint64_t w = window_width(y);
    if (n > f.precision()) throw PrecisionError("window_eigen_sum: eigenvalues needed up to " + std::to_string(n));
    QuadraticNumber s;
    const std::uint64_t lo = n >= w ? n - w + 1 : 1;
    for (std::uint64_t p = lo; p <= n; ++p)
        if (is_prime_small(p)) s += f.lambda_squared_exact(p);
    return s;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(trim(part));
    return out;
}

mpq_class parse_rational(const std::string& s, std::size_t line) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) {
        throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    q.canonicalize();
    return q;
}

}  // namespace

ImportReport import_eigenvalues(std::istream& in, int k, const Eigenform* reference) {
    std::map<std::uint64_t, QuadraticNumber> values;
    int header_k = 0;
    std::string raw;
    std::size_t line = 0;
    bool seen_data = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const auto pos = s.find("k=");
            if (pos != std::string::npos) {
                try {
                    header_k = std::stoi(s.substr(pos + 2));
                } catch (const std::exception&) {
                    throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": bad weight comment");
                }
            }
            continue;
        }
        const auto fields = split_commas(s);
        if (!seen_data && !fields.empty() && !fields[0].empty() &&
            !std::isdigit(static_cast<unsigned char>(fields[0][0]))) {
            continue;  // header row
        }
        seen_data = true;
        if (fields.size() != 2 && fields.size() != 4) {
            throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": expected 2 or 4 fields");
        }
        const mpq_class nq = parse_rational(fields[0], line);
        if (nq.get_den() != 1 || nq < 1 || !nq.get_num().fits_ulong_p()) {
            throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": bad index");
        }
        const std::uint64_t n = nq.get_num().get_ui();
        QuadraticNumber v;
        if (fields.size() == 2) {
            const mpq_class a = parse_rational(fields[1], line);
            if (a.get_den() != 1) throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": a(n) must be an integer");
            v = QuadraticNumber(a);
        } else {
            const mpq_class x = parse_rational(fields[1], line);
            const mpq_class y = parse_rational(fields[2], line);
            const mpq_class D = parse_rational(fields[3], line);
            if (D.get_den() != 1) throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": D must be an integer");
            try {
                v = QuadraticNumber(x, y, D.get_num());
            } catch (const std::invalid_argument& e) {
                throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": " + e.what());
            }
        }
        if (!values.emplace(n, v).second) {
            throw ParseError("eigenvalue CSV line " + std::to_string(line) + ": duplicate n=" + std::to_string(n));
        }
    }
    if (values.empty()) throw ParseError("eigenvalue CSV: no data rows");
    if (k == 0) k = header_k;
    if (k == 0) throw ConfigError("eigenvalue CSV: weight not given and no '# k=' comment");
    if (header_k != 0 && header_k != k) {
        throw ConfigError("eigenvalue CSV: weight mismatch (file k=" + std::to_string(header_k) +
                          ", expected k=" + std::to_string(k) + ")");
    }
    if (reference && reference->weight() != k) {
        throw ConfigError("eigenvalue CSV: weight mismatch with the reference form");
    }
    const std::uint64_t P = values.rbegin()->first;
    if (values.size() != P) throw ParseError("eigenvalue CSV: indices must run through 1..P without gaps");

    std::vector<QuadraticNumber> table(P + 1);
    for (auto& [n, v] : values) table[n] = v;

    ImportReport report;
    report.weight = k;
    report.rows = P;
    if (table[1] != QuadraticNumber(1)) report.relation_violations.push_back(1);
    // Hecke relation at prime powers.
    for (std::uint64_t p = 2; p * p <= P; ++p) {
        if (!is_prime_small(p)) continue;
        const QuadraticNumber pk(pow_ui(p, k - 1));
        std::uint64_t prev = 1, cur = p;
        while (cur <= P / p) {
            const std::uint64_t next = cur * p;
            if (table[p] * table[cur] != table[next] + pk * table[prev]) {
                report.relation_violations.push_back(p);
                break;
            }
            prev = cur;
            cur = next;
        }
    }
    // Multiplicativity, one prime-power factor at a time.
    for (std::uint64_t n = 6; n <= P; ++n) {
        std::uint64_t m = n, q = 1, p = 2;
        while (m % p != 0) ++p;
        while (m % p == 0) {
            m /= p;
            q *= p;
        }
        if (m > 1 && table[q] * table[m] != table[n]) report.multiplicativity_violations.push_back(n);
    }
    if (reference) {
        const std::uint64_t top = std::min<std::uint64_t>(P, reference->precision());
        for (std::uint64_t n = 1; n <= top; ++n) {
            if (reference->exact()) {
                const QuadraticNumber r = reference->a_exact(n);
                if (r != table[n]) report.mismatches.push_back({n, r.str(), table[n].str()});
            } else {
                const mpfr_bits bits = 256;
                const Real r = reference->a(n, bits);
                const Real t = table[n].to_real(bits);
                if (abs(r - t) > Real(1e-30, bits) * max(abs(r), Real(1L, bits))) {
                    report.mismatches.push_back({n, r.str(40), t.str(40)});
                }
            }
        }
    }
    report.accepted = report.relation_violations.empty() && report.multiplicativity_violations.empty() &&
                      report.mismatches.empty();
    if (report.accepted) {
        report.form = std::make_shared<Eigenform>(Eigenform::from_table(k, std::move(table), "imported"));
    }
    return report;
}

ImportReport import_eigenvalues(const std::string& path, int k, const Eigenform* reference) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open eigenvalue file: " + path);
    return import_eigenvalues(in, k, reference);
}

void write_eigenvalues_csv(std::ostream& out, const Eigenform& f, std::uint64_t n_max) {
    if (!f.exact()) throw PrecisionError("write_eigenvalues_csv: numeric forms have no exact export");
    std::vector<QuadraticNumber> a;
    bool rational = true;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        a.push_back(f.a_exact(n));
        rational = rational && a.back().is_rational();
    }
    out << "# k=" << f.weight() << "\n";
    if (rational) {
        out << "n,a(n)\n";
        for (std::uint64_t n = 1; n <= n_max; ++n) out << n << "," << a[n - 1].x() << "\n";
    } else {
        mpz_class D;
        for (const auto& v : a)
            if (!v.is_rational()) D = v.D();
        out << "n,x,y,D\n";
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            out << n << "," << a[n - 1].x() << "," << a[n - 1].y() << "," << D << "\n";
        }
    }
}

}  // namespace hwl
