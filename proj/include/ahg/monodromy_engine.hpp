#pragma once

// The combinatorial engine: facet selection, conormal/height/volume
// extraction and the factored characteristic polynomial of the monodromy at
// infinity, plus non-resonance and non-degeneracy diagnostics and the
// explicit n=2 circulant-companion matrices used as an internal cross-check.

#include "ahg/integer_linalg.hpp"
#include "ahg/lattice_geometry.hpp"
#include "ahg/spectral_algebra.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ahg {

using CMat = Eigen::MatrixXcd;

struct PointConfiguration {
    std::size_t n = 0;            // ambient dimension
    std::vector<IntVec> points;   // a(1), ..., a(N); duplicates permitted
    std::size_t count() const { return points.size(); }
};

enum class ParamMode { Exact, Float };

/// Parameter vector c in C^n; either exact rational entries or complex
/// floats, never mixed.
struct ParameterVector {
    ParamMode mode = ParamMode::Exact;
    std::vector<Rat> exact;
    std::vector<cd> approx;

    static ParameterVector from_rational(std::vector<Rat> entries);
    static ParameterVector from_complex(std::vector<cd> entries);
    std::size_t size() const;
    cd value(std::size_t i) const;  // float view of entry i
};

struct ValidationReport {
    std::vector<Int> snf_divisors;
    std::size_t ambient_dim = 0;
    int delta_dim = 0;          // dim conv(A ∪ {0})
    bool generates_lattice = false;
    bool full_dimensional = false;
    bool pass = false;
    std::string message;        // empty when pass
};

/// Verdict-style check that A generates Z^n (all SNF divisors 1) and that
/// conv(A ∪ {0}) is full-dimensional.
ValidationReport validate_configuration(const PointConfiguration& a);

enum class ResonanceStatus { NonResonant, NonResonantNearInteger, Resonant };

struct ResonanceFacetCheck {
    std::vector<IntVec> facet_vertices;  // ambient points, includes 0
    IntVec rho;
    std::optional<Rat> pairing_exact;    // <rho, c> in exact mode
    cd pairing_float{0.0, 0.0};
    double distance_to_integer = 0.0;    // float mode only
    bool integral = false;
    bool warning = false;
};

struct ResonanceReport {
    ResonanceStatus status = ResonanceStatus::NonResonant;
    std::vector<ResonanceFacetCheck> checks;
    std::optional<std::size_t> witness;  // index into checks when Resonant
};

/// Non-resonance test: for each facet of conv(A ∪ {0}) through the origin
/// with primitive conormal rho, <rho, c> must not be an integer (this is
/// equivalent to c ∉ Z^n + Lin(Γ) since rho is primitive). Exact in
/// rational mode; float mode uses a 1e-9 threshold with a warning band up
/// to 1e-6.
ResonanceReport check_nonresonance(const PointConfiguration& a, const ParameterVector& c);

struct GammaContribution {
    std::vector<IntVec> gamma_points;  // vertices of Γ_ij (empty for the ∅ face)
    IntVec rho;                        // primitive inner conormal of Γ̂_ij ≺ Δ̂_i
    Int height;                        // h_ij = <rho, a(j0)> > 0
    Int vol_gamma_hat;                 // Vol_Z(conv({0} ∪ Γ_ij))
};

struct FacetContribution {
    std::vector<IntVec> delta_points;  // vertices of Δ_i
    Int vol_delta_hat;                 // Vol_Z(conv({0} ∪ Δ_i))
    std::vector<GammaContribution> gammas;
};

/// Theorem ingredients for one distinguished point: the facets Δ_i of Δ with
/// a(j0) ∈ Δ_i, 0 ∉ Δ_i, and for each the sub-facets Γ_ij with a(j0) ∉ Γ_ij
/// together with conormals, heights and normalized volumes. The per-facet
/// pyramid identity Σ_j h_ij Vol(Γ̂_ij) = Vol(Δ̂_i) is asserted.
/// j0 is 1-based. Requires conv(A ∪ {0}) full-dimensional; the lattice
/// generation hypothesis is only reported (see MonodromyReport).
std::vector<FacetContribution> relevant_facet_data(const PointConfiguration& a,
                                                   std::size_t j0);

enum class LoopOrientation { Ccw, Cw };

struct MonodromyReport {
    std::size_t j0 = 0;
    LoopOrientation orientation = LoopOrientation::Ccw;
    FactoredCharPoly char_poly;
    std::vector<FacetContribution> contributions;
    Int t_minus_one_exponent;
    Int degree;  // Vol_Z(Δ)
    ResonanceReport resonance;
    bool lattice_generated = false;  // A generates Z^n (SNF divisors all 1)
    bool theorem_hypotheses_met = false;
};

/// The factored characteristic polynomial of the monodromy of the solution
/// space along one large circle in the z_{j0} coordinate:
///   prod_{i,j} (t^{h_ij} - e^{-2 pi i <rho_ij, c>})^{Vol(Γ̂_ij)}
///   * (t-1)^{Vol(Δ) - Σ_i Vol(Δ̂_i)}
/// for the counterclockwise loop; the clockwise loop conjugates multipliers.
/// Resonant c still gets the formula, flagged via theorem_hypotheses_met.
MonodromyReport monodromy_at_infinity(const PointConfiguration& a, const ParameterVector& c,
                                      std::size_t j0,
                                      LoopOrientation orientation = LoopOrientation::Ccw);

struct Phi1Matrices {
    CMat K;                 // h x h
    CMat L;                 // (h d1) x (h d1), block companion with K top-right
    CMat L_from_index_map;  // same matrix assembled from the delta-index action
};

/// The explicit monodromy matrices of the two-dimensional case: K = eps1 *
/// Cyc^p where Cyc is the h-cycle with eps2 in the corner, and the block
/// companion L. Both the block construction and the index-map action
/// Phi1(delta_{d1,j}) = eps1 * eps2^{{j+p}_h} * delta_{1,[j+p]_h} are built
/// and checked against each other entrywise. c must have two entries.
Phi1Matrices phi1_matrix(std::int64_t p, std::int64_t h, std::int64_t d1,
                         const ParameterVector& c);

struct Phi1IdentityReport {
    bool pass = false;
    double max_coeff_error = 0.0;
    std::vector<cd> charpoly_numeric;  // char poly of L, leading first
    std::vector<cd> charpoly_product;  // zeta-product expansion
};

/// Checks that charpoly(L) equals prod_{zeta^h = eps2} (t^{d1} - eps1 zeta^p)
/// coefficientwise within 1e-10.
Phi1IdentityReport phi1_charpoly_identity(std::int64_t p, std::int64_t h, std::int64_t d1,
                                          const ParameterVector& c);

/// Coefficient vector z for the non-degeneracy check; exact rational or
/// complex float entries (uniform mode), zeros allowed.
struct CoefficientVector {
    ParamMode mode = ParamMode::Exact;
    std::vector<Rat> exact;
    std::vector<cd> approx;

    static CoefficientVector from_rational(std::vector<Rat> entries);
    static CoefficientVector from_complex(std::vector<cd> entries);
    std::size_t size() const;
    cd value(std::size_t i) const;
};

enum class FaceVerdict { Nondegenerate, Degenerate, Unchecked };

struct FaceCheck {
    std::vector<IntVec> face_points;  // vertices of the face
    int dim = 0;
    FaceVerdict verdict = FaceVerdict::Unchecked;
    std::string detail;
};

struct NondegeneracyReport {
    std::vector<FaceCheck> faces;
    FaceVerdict overall = FaceVerdict::Nondegenerate;
};

/// Per-face non-degeneracy diagnostic for h_z = Σ z_j x^{a(j)}: vertex faces
/// need a nonzero summed coefficient; edge faces reduce to a univariate
/// square-freeness test (exact gcd for rational z, Sylvester resultant with
/// threshold 1e-9 after max-abs normalization otherwise); faces of dim >= 2
/// are reported unchecked. Throws if z has the wrong length.
NondegeneracyReport check_nondegeneracy(const PointConfiguration& a,
                                        const CoefficientVector& z);

}  // namespace ahg
