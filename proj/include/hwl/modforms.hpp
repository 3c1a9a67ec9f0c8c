#pragma once

// Level-one cusp forms: dimensions, the Victor Miller basis, Hecke matrices and
// the symbolic algebra of Hecke relations at prime powers.

#include "hwl/matrix.hpp"
#include "hwl/qexpansion.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hwl {

/// dim S_k for even k >= 4.
int dim_cusp(int k);

/// g_1..g_d with g_i = q^i + O(q^{d+1}); empty when d = 0. Requires M > d.
std::vector<QExpansion> victor_miller_basis(int k, std::size_t M);

/// Same, read from / written to `cache_dir` when it is non-empty. Files whose
/// checksum does not match are recomputed and replaced.
std::vector<QExpansion> victor_miller_basis_cached(int k, std::size_t M, const std::string& cache_dir,
                                                   bool* cache_hit = nullptr);

void write_basis(std::ostream& out, int k, std::size_t M, const std::vector<QExpansion>& basis);
/// Throws ParseError on a malformed or corrupted stream.
std::vector<QExpansion> read_basis(std::istream& in, int& k, std::size_t& M);

/// Largest coefficient index T_n touches on a d-dimensional basis: n * d.
std::size_t hecke_precision_needed(std::uint64_t n, int d);

/// Matrix of the unnormalized T_n acting on basis coordinates: column j holds the
/// first d coefficients of T_n g_j, M_ij = sum_{delta | (n, i)} delta^{k-1} b_j(n i / delta^2).
Matrix<mpz_class> hecke_operator_matrix(const std::vector<QExpansion>& basis, std::uint64_t n);
Matrix<mpz_class> hecke_operator_matrix(int k, std::uint64_t n, std::size_t M);

/// Coefficients 0..out_precision of T_n f.
QExpansion hecke_action(const QExpansion& f, std::uint64_t n, std::size_t out_precision);

/// lambda(p)^m = sum_r coeffs[r] lambda(p^r) for every Hecke eigenform.
struct PowerDecomposition {
    unsigned m = 0;
    std::vector<mpz_class> coeffs;  // indices 0..m

    const mpz_class& constant() const { return coeffs.at(0); }
    /// Right-hand side at lambda(p^r) = U_r(cos theta).
    double evaluate_chebyshev(double theta) const;
};

PowerDecomposition power_decomposition(unsigned m);

/// (2j)! / (j! (j+1)!).
mpz_class catalan(unsigned j);

/// Chebyshev polynomial of the second kind U_r(x).
double chebyshev_u(unsigned r, double x);

}  // namespace hwl
