#include "hwl/modforms.hpp"

#include "hwl/errors.hpp"

#include <boost/crc.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hwl {

int dim_cusp(int k) {
    if (k % 2 != 0) throw ConfigError("dim_cusp: weight must be even");
    if (k < 4) throw ConfigError("dim_cusp: weight must be at least 4");
    const int d = k / 12;
    return (k % 12 == 2) ? d - 1 : d;
}

namespace {

QExpansion one_series(std::size_t M) {
    std::vector<mpz_class> c(M + 1, 0);
    c[0] = 1;
    return QExpansion(0, std::move(c));
}

}  // namespace

std::vector<QExpansion> victor_miller_basis(int k, std::size_t M) {
    const int d = dim_cusp(k);
    if (d == 0) return {};
    if (M <= static_cast<std::size_t>(d)) {
        throw PrecisionError("victor_miller_basis: precision must exceed the dimension");
    }
    const int e = (k % 12 == 2) ? 14 : k % 12;
    const QExpansion D = delta(M);

    QExpansion A = one_series(M);
    if (e == 4 || e == 8 || e == 10 || e == 14) {
        const QExpansion E4 = eisenstein(4, M);
        A = (e == 8 || e == 14) ? E4 * E4 : E4;
    }
    if (e == 6 || e == 10 || e == 14) A = A * eisenstein(6, M);

    // F_i = A E6^{2(d-i)} Delta^i.
    std::vector<QExpansion> e6sq_pow{one_series(M)};
    if (d > 1) {
        const QExpansion E6 = eisenstein(6, M);
        const QExpansion E6sq = E6 * E6;
        for (int j = 1; j < d; ++j) e6sq_pow.push_back(e6sq_pow.back() * E6sq);
    }
    std::vector<QExpansion> basis;
    QExpansion delta_pow = D;
    for (int i = 1; i <= d; ++i) {
        QExpansion f = e6sq_pow[d - i] * delta_pow;
        if (A.weight() != 0) f = A * f;
        basis.push_back(std::move(f));
        if (i < d) delta_pow = delta_pow * D;
    }
    // Back-substitution: clear q^j (i < j <= d) in g_i with the already-reduced g_j.
    for (int i = d - 1; i >= 1; --i) {
        for (int j = i + 1; j <= d; ++j) {
            const mpz_class c = basis[i - 1][j];
            if (c != 0) basis[i - 1].subtract_multiple(c, basis[j - 1]);
        }
    }
    return basis;
}

namespace {

void put_u64(std::string& s, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(const std::string& s, std::size_t& pos) {
    if (pos + 8 > s.size()) throw ParseError("basis cache: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + i])) << (8 * i);
    pos += 8;
    return v;
}

std::uint32_t crc32_of(const std::string& s) {
    boost::crc_32_type crc;
    crc.process_bytes(s.data(), s.size());
    return crc.checksum();
}

}  // namespace

void write_basis(std::ostream& out, int k, std::size_t M, const std::vector<QExpansion>& basis) {
    std::string payload;
    put_u64(payload, static_cast<std::uint64_t>(k));
    put_u64(payload, M);
    put_u64(payload, basis.size());
    std::vector<unsigned char> buf;
    for (const auto& g : basis) {
        if (g.precision() != M) throw std::invalid_argument("write_basis: precision mismatch");
        for (const auto& c : g.coeffs()) {
            const std::size_t bytes = (mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8;
            buf.assign(bytes + 1, 0);
            std::size_t count = 0;
            mpz_export(buf.data(), &count, 1, 1, 1, 0, c.get_mpz_t());
            payload.push_back(static_cast<char>(sgn(c) < 0 ? 1 : 0));
            put_u64(payload, count);
            payload.append(reinterpret_cast<const char*>(buf.data()), count);
        }
    }
    out.write("HWLV", 4);
    std::string crc;
    put_u64(crc, crc32_of(payload));
    out.write(crc.data(), 8);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("write_basis: write failed");
}

std::vector<QExpansion> read_basis(std::istream& in, int& k, std::size_t& M) {
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string all = ss.str();
    if (all.size() < 12 || all.compare(0, 4, "HWLV") != 0) throw ParseError("basis cache: bad magic");
    std::size_t pos = 4;
    const std::uint64_t crc = get_u64(all, pos);
    const std::string payload = all.substr(12);
    if (crc != crc32_of(payload)) throw ParseError("basis cache: checksum mismatch");
    pos = 0;
    k = static_cast<int>(get_u64(payload, pos));
    M = get_u64(payload, pos);
    const std::uint64_t d = get_u64(payload, pos);
    std::vector<QExpansion> basis;
    for (std::uint64_t i = 0; i < d; ++i) {
        std::vector<mpz_class> c(M + 1);
        for (auto& v : c) {
            if (pos >= payload.size()) throw ParseError("basis cache: truncated");
            const bool negative = payload[pos++] != 0;
            const std::uint64_t count = get_u64(payload, pos);
            if (pos + count > payload.size()) throw ParseError("basis cache: truncated");
            mpz_import(v.get_mpz_t(), count, 1, 1, 1, 0, payload.data() + pos);
            pos += count;
            if (negative) v = -v;
        }
        basis.emplace_back(k, std::move(c));
    }
    if (pos != payload.size()) throw ParseError("basis cache: trailing bytes");
    return basis;
}

std::vector<QExpansion> victor_miller_basis_cached(int k, std::size_t M, const std::string& cache_dir,
                                                   bool* cache_hit) {
    if (cache_hit) *cache_hit = false;
    if (cache_dir.empty()) return victor_miller_basis(k, M);
    namespace fs = std::filesystem;
    const fs::path path =
        fs::path(cache_dir) / ("vm_k" + std::to_string(k) + "_M" + std::to_string(M) + ".bin");
    if (fs::exists(path)) {
        try {
            std::ifstream in(path, std::ios::binary);
            int k2 = 0;
            std::size_t M2 = 0;
            auto basis = read_basis(in, k2, M2);
            if (k2 == k && M2 == M) {
                if (cache_hit) *cache_hit = true;
                return basis;
            }
        } catch (const ParseError&) {
            // fall through and rebuild
        }
    }
    auto basis = victor_miller_basis(k, M);
    fs::create_directories(cache_dir);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        write_basis(out, k, M, basis);
    }
    fs::rename(tmp, path);
    return basis;
}

std::size_t hecke_precision_needed(std::uint64_t n, int d) { return static_cast<std::size_t>(n) * d; }

Matrix<mpz_class> hecke_operator_matrix(const std::vector<QExpansion>& basis, std::uint64_t n) {
    if (n < 1) throw ConfigError("hecke_operator_matrix: n must be positive");
    const int d = static_cast<int>(basis.size());
    Matrix<mpz_class> T(d, d, mpz_class(0));
    if (d == 0) return T;
    const int k = basis.front().weight();
    const std::size_t need = hecke_precision_needed(n, d);
    for (const auto& g : basis) {
        if (g.precision() < need) {
            throw PrecisionError("hecke_operator_matrix: T_" + std::to_string(n) + " on dimension " +
                                 std::to_string(d) + " needs precision " + std::to_string(need) +
                                 ", have " + std::to_string(g.precision()));
        }
    }
    for (int i = 1; i <= d; ++i) {
        const std::uint64_t g = std::gcd<std::uint64_t>(n, i);
        for (std::uint64_t delta = 1; delta <= g; ++delta) {
            if (g % delta != 0) continue;
            mpz_class w;
            mpz_ui_pow_ui(w.get_mpz_t(), delta, k - 1);
            const std::uint64_t idx = n * i / (delta * delta);
            for (int j = 1; j <= d; ++j) T(i - 1, j - 1) += w * basis[j - 1][idx];
        }
    }
    return T;
}

Matrix<mpz_class> hecke_operator_matrix(int k, std::uint64_t n, std::size_t M) {
    const int d = dim_cusp(k);
    if (M < hecke_precision_needed(n, d)) {
        throw PrecisionError("hecke_operator_matrix: precision " + std::to_string(M) + " below " +
                             std::to_string(hecke_precision_needed(n, d)));
    }
    return hecke_operator_matrix(victor_miller_basis(k, std::max<std::size_t>(M, d + 1)), n);
}

QExpansion hecke_action(const QExpansion& f, std::uint64_t n, std::size_t out_precision) {
    if (n < 1) throw ConfigError("hecke_action: n must be positive");
    if (f.precision() < n * out_precision) {
        throw PrecisionError("hecke_action: input precision too small");
    }
    std::vector<mpz_class> c(out_precision + 1, 0);
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t delta = 1; delta <= n; ++delta)
        if (n % delta == 0) divisors.push_back(delta);
    std::vector<mpz_class> weights;
    for (auto delta : divisors) {
        mpz_class w;
        mpz_ui_pow_ui(w.get_mpz_t(), delta, f.weight() - 1);
        weights.push_back(w);
    }
    for (std::size_t m = 0; m <= out_precision; ++m) {
        for (std::size_t t = 0; t < divisors.size(); ++t) {
            const std::uint64_t delta = divisors[t];
            if (m % delta != 0) continue;
            c[m] += weights[t] * f[n * m / (delta * delta)];
        }
    }
    return QExpansion(f.weight(), std::move(c));
}

double PowerDecomposition::evaluate_chebyshev(double theta) const {
    const double x = std::cos(theta);
    double s = 0;
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
        if (coeffs[r] != 0) s += coeffs[r].get_d() * chebyshev_u(static_cast<unsigned>(r), x);
    }
    return s;
}

PowerDecomposition power_decomposition(unsigned m) {
    if (m < 1 || m > 24) throw ConfigError("power_decomposition: m must lie in [1, 24]");
    std::vector<mpz_class> c{1};
    for (unsigned step = 0; step < m; ++step) {
        std::vector<mpz_class> next(c.size() + 1, 0);
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (c[r] == 0) continue;
            next[r + 1] += c[r];
            if (r >= 1) next[r - 1] += c[r];
        }
        c = std::move(next);
    }
    return PowerDecomposition{m, std::move(c)};
}

mpz_class catalan(unsigned j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * j, j);
    return b / (j + 1);
}

double chebyshev_u(unsigned r, double x) {
    double u0 = 1, u1 = 2 * x;
    if (r == 0) return u0;
    for (unsigned i = 1; i < r; ++i) {
        const double u2 = 2 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

}  // namespace hwl
