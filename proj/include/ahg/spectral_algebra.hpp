#pragma once

// Factored characteristic polynomials with exact unit-circle multipliers.
// Rational angles q (meaning exp(2*pi*i*q)) are the canonical representation;
// complex floats exist for oracle comparison and display.

#include "ahg/integer_linalg.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ahg {

using cd = std::complex<double>;

/// q mod 1 reduced into [0, 1).
Rat reduce_mod1(Rat q);

struct UnitScalar {
    enum class Kind { RationalAngle, ComplexFloat };
    Kind kind = Kind::RationalAngle;
    Rat q;    // in [0,1), represents exp(2*pi*i*q)
    cd z{1.0, 0.0};

    static UnitScalar from_angle(const Rat& angle);
    static UnitScalar from_complex(cd value);

    cd value() const;
    bool is_rational() const { return kind == Kind::RationalAngle; }
    /// |value| - 1, for unit-modulus checks.
    double unit_defect() const;
    /// angle in turns, in (-1/2, 1/2]; exact for rational angles.
    double principal_turns() const;
    /// rational angle as a principal representative in (-1/2, 1/2].
    Rat principal_q() const;

    bool operator==(const UnitScalar& o) const;
    bool operator<(const UnitScalar& o) const;  // canonical order
};

struct Factor {
    std::int64_t h = 1;      // exponent in t^h - mu
    UnitScalar mu;
    std::int64_t mult = 1;

    bool operator==(const Factor&) const = default;
};

/// Throws std::invalid_argument unless h >= 1 and mult >= 1.
Factor make_factor(std::int64_t h, const UnitScalar& mu, std::int64_t mult);

/// Canonical product: factors merged by (h, mu) and sorted ascending by h,
/// then by multiplier (rational angles first, then floats by principal
/// argument). Deterministic for any input order.
struct FactoredCharPoly {
    std::vector<Factor> factors;

    std::int64_t degree() const;
    bool operator==(const FactoredCharPoly&) const = default;
};

FactoredCharPoly product(const std::vector<Factor>& factors);

/// Monic coefficient vector, leading coefficient first (degree+1 entries).
/// Rational angles hit floating point only here.
std::vector<cd> expand(const FactoredCharPoly& p);

struct SpectrumEntry {
    UnitScalar value;
    std::int64_t mult = 1;
    bool operator==(const SpectrumEntry&) const = default;
};

struct SpectrumMultiset {
    std::vector<SpectrumEntry> entries;
    std::int64_t total() const;
};

/// Roots of every factor: t^h = mu has the h roots with angles
/// (angle(mu) + k)/h, k = 0..h-1; rational angles stay exact.
SpectrumMultiset roots(const FactoredCharPoly& p);

struct SpectrumMatch {
    bool pass = false;
    bool cardinality_mismatch = false;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    double max_distance = 0.0;
    cd witness_a{0.0, 0.0};
    cd witness_b{0.0, 0.0};
};

/// Matches the two multisets on the unit circle with a cyclic
/// order-preserving assignment (all rotations of the argument-sorted lists
/// are tried, the best taken) and reports the max pairwise distance.
SpectrumMatch compare_spectra(const SpectrumMultiset& a, const SpectrumMultiset& b,
                              double tol);

/// Horner evaluation of a leading-first coefficient vector.
cd eval_poly(const std::vector<cd>& coeffs, cd t);

/// "e(q)" display form used by the text reports: e(0) -> "1",
/// e(1/2) -> "-1", otherwise "e(p/q)" with q principal in (-1/2, 1/2].
std::string unit_scalar_to_string(const UnitScalar& u);

}  // namespace ahg
