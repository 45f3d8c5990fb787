#pragma once

// Exact convex hulls, face charts, primitive inner conormals and normalized
// lattice volumes for integer point sets in low ambient dimension. All
// geometry is exact (GMP); facet enumeration is the exhaustive candidate
// hyperplane scan, fine at desk scale.

#include "ahg/integer_linalg.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ahg {

/// Affine lattice chart of a d-dimensional rational-affine subspace of Z^n:
/// x = anchor + basis * xi with xi in Z^d. The basis is a saturated lattice
/// basis, so every lattice point of the subspace has integer coordinates.
struct Chart {
    std::size_t ambient_dim = 0;
    IntVec anchor;                // in Z^n
    std::vector<IntVec> basis;    // d vectors in Z^n
    std::size_t dim() const { return basis.size(); }
};

std::optional<IntVec> to_chart(const Chart& chart, const IntVec& ambient_point);
IntVec from_chart(const Chart& chart, const IntVec& chart_point);

/// One facet inequality <normal, x> >= offset, tight exactly on the incident
/// vertices. Lives in chart coordinates; for a full-dimensional polytope the
/// chart is the identity, so normals and offsets are ambient.
struct FacetData {
    IntVec normal;  // primitive, inward
    Int offset;
    std::vector<std::size_t> incident;  // vertex indices, sorted

    bool operator==(const FacetData&) const = default;
};

struct LatticePolytope {
    std::size_t ambient_dim = 0;
    int dim = 0;                          // intrinsic dimension
    std::vector<IntVec> vertices;         // extreme points only, ambient coords
    std::vector<IntVec> chart_vertices;   // same points in chart coords (Z^dim)
    Chart chart;                          // identity chart when dim == ambient_dim
    std::vector<FacetData> facets;        // empty for dim == 0 (see Face below)
};

/// A face of a polytope. dim == -1 encodes the empty face, the conventional
/// unique facet of a 0-dimensional polytope (conv({0} ∪ ∅) = {0}).
struct Face {
    std::vector<std::size_t> vertex_indices;  // into the parent's vertices
    int dim = 0;
    Chart chart;  // anchor = first vertex, saturated basis of the face span
};

/// Exact convex hull. Lower-dimensional hulls get an affine span chart and
/// their facets are computed inside it. Duplicates are deduplicated.
LatticePolytope convex_hull(const std::vector<IntVec>& points);

/// All facets as Face objects; for a 0-dimensional polytope, the single
/// empty face.
std::vector<Face> faces_of_codim_one(const LatticePolytope& p);

/// Ambient coordinates of a face's vertices.
std::vector<IntVec> face_points(const LatticePolytope& parent, const Face& f);

/// The face as a standalone polytope (hull of its vertices).
LatticePolytope face_polytope(const LatticePolytope& parent, const Face& f);

/// Normalized volume: dim! times the Euclidean volume measured in the
/// induced lattice of the affine span. Volume of a point is 1. Computed by
/// recursive cone decomposition from a vertex with exact determinants.
Int normalized_volume(const LatticePolytope& p);
Int normalized_volume(const LatticePolytope& parent, const Face& f);

/// Same, anchored at a chosen vertex; the result is anchor-independent.
Int normalized_volume_from_anchor(const LatticePolytope& p, std::size_t anchor_vertex);

/// Primitive inner conormal (rho, b) of a codimension-one face, in the
/// polytope's facet coordinates. Throws if f is not a facet of p.
std::pair<IntVec, Int> inner_conormal(const LatticePolytope& p, const Face& f);

/// Facet of p whose incident vertex point set equals `points` (as a set of
/// ambient points). Throws if there is none.
std::pair<IntVec, Int> facet_through(const LatticePolytope& p,
                                     const std::vector<IntVec>& points);

/// <rho, a> - b, the lattice height of a over the hyperplane (rho, b).
Int lattice_height(const IntVec& rho, const Int& offset, const IntVec& a);

/// Exact membership of an ambient point in the polytope.
bool contains(const LatticePolytope& p, const IntVec& ambient_point);

/// True iff the ambient point lies on facet `facet_index` (which implies
/// membership in its hyperplane, not in the polytope).
bool on_facet_hyperplane(const LatticePolytope& p, std::size_t facet_index,
                         const IntVec& ambient_point);

/// Generalized cross product: the integer vector g with
/// <g, x> = det(rows[0], ..., rows[d-2], x) for all x in Z^d.
IntVec cross_general(const std::vector<IntVec>& rows, std::size_t dim);

}  // namespace ahg
