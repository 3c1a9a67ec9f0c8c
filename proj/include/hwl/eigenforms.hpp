#pragma once

// Normalized Hecke eigenforms of level one, eigenvalue tables and their CSV
// exchange format.

#include "hwl/matrix.hpp"
#include "hwl/qexpansion.hpp"
#include "hwl/quadratic.hpp"
#include "hwl/real.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hwl {

using Basis = std::vector<QExpansion>;

/// Hecke eigenform with a(1) = 1, stored as coordinates on a Victor Miller basis
/// (exact in Q or Q(sqrt D), or numeric) or as an explicit table of a(n).
class Eigenform {
public:
    Eigenform(int k, std::shared_ptr<const Basis> basis, std::vector<QuadraticNumber> coords,
              std::string label);
    Eigenform(int k, std::shared_ptr<const Basis> basis, std::vector<Real> coords, std::string label);
    /// table[n] = a(n) for n = 0..P (table[0] unused).
    static Eigenform from_table(int k, std::vector<QuadraticNumber> table, std::string label);

    int weight() const { return k_; }
    /// Largest n for which a(n) is available.
    std::size_t precision() const;
    bool exact() const { return numeric_coords_.empty(); }
    const std::string& label() const { return label_; }
    /// Precision of numeric coordinates (0 for exact forms).
    mpfr_bits numeric_bits() const;

    const std::vector<QuadraticNumber>& exact_coordinates() const { return exact_coords_; }
    const std::vector<Real>& numeric_coordinates() const { return numeric_coords_; }

    /// a(n) in the coefficient field; throws for numeric forms.
    QuadraticNumber a_exact(std::uint64_t n) const;
    /// lambda(n)^2 = a(n)^2 / n^{k-1}, exactly.
    QuadraticNumber lambda_squared_exact(std::uint64_t n) const;
    Real a(std::uint64_t n, mpfr_bits bits) const;
    /// lambda(n) = a(n) n^{-(k-1)/2}.
    Real lambda(std::uint64_t n, mpfr_bits bits) const;
    Real lambda_squared(std::uint64_t n, mpfr_bits bits) const;

private:
    Eigenform() = default;
    void check_index(std::uint64_t n) const;

    int k_ = 0;
    std::shared_ptr<const Basis> basis_;
    std::vector<QuadraticNumber> exact_coords_;
    std::vector<Real> numeric_coords_;
    std::vector<QuadraticNumber> table_;
    std::string label_;
};

/// Characteristic polynomial det(x I - A) of an integer matrix; entry i is the
/// coefficient of x^i.
std::vector<mpz_class> characteristic_polynomial(const Matrix<mpz_class>& A);

/// All Hecke eigenforms of weight k, with q-expansion data to precision M.
/// Dimension <= 2 is exact; larger dimensions are numeric at max(digits, 60)
/// significant digits. Every form is checked against T_2, T_3, T_5; M must be at
/// least 5 * dim. Forms are ordered by increasing a(2).
std::vector<Eigenform> eigenforms(int k, std::size_t M, int digits = 60, const std::string& cache_dir = "");

/// Sum of lambda_f(p)^2 over primes p in (n - y, n].
Real window_eigen_sum(const Eigenform& f, std::uint64_t n, double y, mpfr_bits bits);
QuadraticNumber window_eigen_sum_exact(const Eigenform& f, std::uint64_t n, double y);

struct ImportMismatch {
    std::uint64_t n = 0;
    std::string expected;
    std::string found;
};

struct ImportReport {
    bool accepted = false;
    int weight = 0;
    std::uint64_t rows = 0;
    std::vector<std::uint64_t> relation_violations;  // primes p where a Hecke relation fails
    std::vector<std::uint64_t> multiplicativity_violations;  // n = ab, (a, b) = 1, a(a)a(b) != a(n)
    std::vector<ImportMismatch> mismatches;          // against the reference form
    std::shared_ptr<Eigenform> form;                 // set only when accepted
};

/// Reads `n,a(n)` (integers) or `n,x,y,D` rows, an optional header row and an
/// optional `# k=<weight>` comment. k = 0 takes the weight from the comment.
/// Throws ParseError for malformed or empty input and ConfigError on weight
/// mismatch; relation failures and mismatches are reported, not thrown.
ImportReport import_eigenvalues(std::istream& in, int k, const Eigenform* reference = nullptr);
ImportReport import_eigenvalues(const std::string& path, int k, const Eigenform* reference = nullptr);

/// Writes rows n = 1..n_max in the exchange format (exact forms only).
void write_eigenvalues_csv(std::ostream& out, const Eigenform& f, std::uint64_t n_max);

}  // namespace hwl
