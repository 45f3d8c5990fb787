#pragma once

// Independent numeric validation: a curated catalog of restricted systems,
// monodromy by analytic continuation around a large circle with an adaptive
// embedded Runge-Kutta integrator, and a second normalized-volume algorithm
// (beneath-beyond placing triangulation with exact determinant sums).

#include "ahg/integer_linalg.hpp"
#include "ahg/monodromy_engine.hpp"
#include "ahg/spectral_algebra.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ahg {

/// Ratio of two complex polynomials; coefficients ascending.
struct RationalFunction {
    std::vector<cd> num;
    std::vector<cd> den;
    cd operator()(cd z) const;
};

struct OdeSystem {
    std::string id;
    std::size_t size = 0;
    std::vector<std::vector<RationalFunction>> coeff;  // M(z), size x size
    std::vector<double> singular_moduli;               // |z| of poles/degeneracies
    ParameterVector c;
    std::vector<cd> frozen;  // the non-loop coordinates

    CMat eval(cd z) const;
};

/// Curated systems: "power" (A = {1}, loop in z1), "hermite" (A = {1,2},
/// loop in z2, z1 frozen), "kummer_square" (A = {(1,0),(0,1),(1,1)}, loop in
/// z3, z1, z2 frozen). Frozen coordinates default to 1 and must be nonzero.
/// Throws on an unknown id or a wrong-sized parameter vector.
OdeSystem catalog_system(const std::string& id, const ParameterVector& c,
                         const std::vector<cd>& frozen = {});

/// The point configuration and distinguished index a catalog entry models.
PointConfiguration catalog_configuration(const std::string& id);
std::size_t catalog_j0(const std::string& id);

struct MonodromyMatrix {
    CMat transport;
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double error_estimate = 0.0;  // sum of accepted local error estimates
    double radius = 0.0;
};

/// Transports the identity fundamental matrix once around |z| = radius
/// (counterclockwise unless reverse) with Dormand-Prince 5(4), local
/// tolerance tol, at least 256 steps. radius = nullopt means
/// max(10, 2 * largest singular modulus). Throws if the radius does not
/// clear every singularity or the step count blows up.
MonodromyMatrix numeric_monodromy(const OdeSystem& sys, std::optional<double> radius,
                                  double tol = 1e-10, double base_angle = 0.0,
                                  bool reverse = false);

/// Eigenvalues of a small (<= 16) monodromy matrix, clustered at 1e-6.
SpectrumMultiset numeric_spectrum(const MonodromyMatrix& m);

/// Normalized volume by a route independent of the cone-recursion in
/// lattice_geometry: incremental beneath-beyond triangulation, summing
/// exact simplex determinants. Point (0-dimensional) convention: 1.
Int volume_bruteforce(const std::vector<IntVec>& points);

/// Catalog acceptance check: evaluates an explicit convergent series
/// solution of the original system, verifies the box relation on it, and
/// substitutes it into the scalar reduction along a ray. Returns the
/// largest relative residual; catalog entries must stay below 1e-8.
/// Exact parameter vectors only (the series coefficients need real c).
double catalog_residual(const std::string& id, const ParameterVector& c);

}  // namespace ahg
