#pragma once

// Exact integer matrix kernels: Hermite and Smith normal forms, primitive
// vectors, integer kernels and saturated lattice bases. Everything runs on
// arbitrary-precision integers (GMP); no floating point anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ahg {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

/// Dense row-major integer matrix with arbitrary-precision entries.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> a;  // row-major, rows*cols entries

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);
    static IntMatrix from_cols(const std::vector<IntVec>& cols);

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    IntMatrix transposed() const;

    bool operator==(const IntMatrix&) const = default;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntVec mul(const IntMatrix& a, const IntVec& v);

/// Exact determinant (fraction-free Bareiss elimination). Square input.
Int determinant(const IntMatrix& m);

/// True iff m is square with |det m| = 1.
bool is_unimodular(const IntMatrix& m);

/// Column-style Hermite normal form.
///
/// Convention (fixed, used everywhere): H = M * U with U unimodular.
/// The nonzero columns of H come first; column j has its first nonzero
/// entry (the pivot) in row r_j with r_0 < r_1 < ..., pivots are positive,
/// and in each pivot row the entries to the LEFT of the pivot are reduced
/// into [0, pivot).
struct HnfResult {
    IntMatrix H;
    IntMatrix U;  // |det U| = 1, M * U = H
};
HnfResult hermite_normal_form(const IntMatrix& m);

/// Row-style companion: H = U * M, transpose of the column convention.
HnfResult hermite_normal_form_rows(const IntMatrix& m);

/// Smith normal form, computed by iterated row/column Hermite passes.
/// U * M * V = diag(divisors), divisors nonnegative with d1 | d2 | ...
/// (zeros trailing), U and V unimodular.
struct SnfResult {
    std::vector<Int> divisors;  // length min(rows, cols)
    IntMatrix U;
    IntMatrix V;
    std::size_t rank() const;
};
SnfResult smith_normal_form(const IntMatrix& m);

/// v / gcd(entries). Throws std::invalid_argument on the zero vector.
IntVec primitive_vector(const IntVec& v);

/// Basis of the full integer kernel {x in Z^cols : M x = 0}; the kernel of
/// an integer matrix is saturated by construction. Basis is put in column
/// Hermite form for determinism. Empty matrix rows => kernel is Z^cols.
std::vector<IntVec> integer_kernel(const IntMatrix& m);

/// Basis of the saturation Lin(vectors) ∩ Z^n (not merely the sublattice
/// the inputs generate). Returned basis is in column Hermite form.
/// Empty input or all-zero input => empty basis.
std::vector<IntVec> lattice_basis_of_span(const std::vector<IntVec>& vectors,
                                          std::size_t ambient_dim);

/// Exact solve B x = y over Q (B full column rank expected). Returns nullopt
/// when the system is inconsistent or rank-deficient.
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& b, const IntVec& y);

/// Exact solve B x = y over Z: rational solve + integrality check.
std::optional<IntVec> solve_integer(const IntMatrix& b, const IntVec& y);

/// Correctly-rounded double value of a rational (GMP's get_d truncates).
double rat_to_double(const Rat& q);

// small vector helpers shared by the geometry modules
Int dot(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& a);
bool is_zero(const IntVec& a);
std::string to_string(const IntVec& v);

}  // namespace ahg
