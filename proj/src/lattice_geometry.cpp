#include "ahg/lattice_geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ahg {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<IntVec> dedupe_sorted(std::vector<IntVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Chart identity_chart(std::size_t n) {
    Chart c;
    c.ambient_dim = n;
    c.anchor.assign(n, Int(0));
    for (std::size_t j = 0; j < n; ++j) {
        IntVec e(n);
        e[j] = 1;
        c.basis.push_back(std::move(e));
    }
    return c;
}

// integer rank of a list of vectors
std::size_t rank_of(const std::vector<IntVec>& vecs, std::size_t dim) {
    std::vector<IntVec> nz;
    for (const IntVec& v : vecs)
        if (!is_zero(v)) nz.push_back(v);
    if (nz.empty()) return 0;
    return lattice_basis_of_span(nz, dim).size();
}

}  // namespace

std::optional<IntVec> to_chart(const Chart& chart, const IntVec& ambient_point) {
    require(ambient_point.size() == chart.ambient_dim, "to_chart: wrong point length");
    IntVec y = sub(ambient_point, chart.anchor);
    if (chart.basis.empty()) {
        if (!is_zero(y)) return std::nullopt;
        return IntVec{};
    }
    return solve_integer(IntMatrix::from_cols(chart.basis), y);
}

IntVec from_chart(const Chart& chart, const IntVec& chart_point) {
    require(chart_point.size() == chart.basis.size(), "from_chart: wrong point length");
    IntVec x = chart.anchor;
    for (std::size_t j = 0; j < chart.basis.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += chart_point[j] * chart.basis[j][i];
    return x;
}

IntVec cross_general(const std::vector<IntVec>& rows, std::size_t dim) {
    require(rows.size() + 1 == dim, "cross_general: need dim-1 rows");
    IntVec g(dim);
    if (dim == 1) {
        g[0] = 1;  // det of the 1x1 matrix (x) is x itself
        return g;
    }
    IntMatrix sub(dim - 1, dim - 1);
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < dim; ++j) {
                if (j == k) continue;
                sub.at(i, jj++) = rows[i][j];
            }
        }
        Int minor = determinant(sub);
        // cofactor of entry (dim-1, k) in the stacked matrix [rows; x]
        g[k] = ((dim - 1 + k) % 2 == 0) ? minor : Int(-minor);
    }
    return g;
}

LatticePolytope convex_hull(const std::vector<IntVec>& points) {
    require(!points.empty(), "convex_hull: empty point list");
    const std::size_t n = points[0].size();
    require(n >= 1, "convex_hull: ambient dimension must be positive");
    for (const IntVec& p : points) require(p.size() == n, "convex_hull: ragged points");

    std::vector<IntVec> pts = dedupe_sorted(points);

    LatticePolytope poly;
    poly.ambient_dim = n;

    if (pts.size() == 1) {
        poly.dim = 0;
        poly.vertices = pts;
        poly.chart_vertices = {IntVec{}};
        poly.chart.ambient_dim = n;
        poly.chart.anchor = pts[0];
        return poly;
    }

    // affine span chart
    std::vector<IntVec> edges;
    for (std::size_t i = 1; i < pts.size(); ++i) edges.push_back(sub(pts[i], pts[0]));
    std::vector<IntVec> basis = lattice_basis_of_span(edges, n);
    const std::size_t d = basis.size();
    if (d == n) {
        poly.chart = identity_chart(n);
    } else {
        poly.chart.ambient_dim = n;
        poly.chart.anchor = pts[0];
        poly.chart.basis = basis;
    }
    poly.dim = static_cast<int>(d);

    std::vector<IntVec> cpts;
    for (const IntVec& p : pts) {
        auto xi = to_chart(poly.chart, p);
        if (!xi) throw std::logic_error("convex_hull: point escapes its own chart");
        cpts.push_back(std::move(*xi));
    }

    std::map<std::pair<IntVec, Int>, std::set<std::size_t>> found;

    if (d == 1) {
        std::size_t imin = 0, imax = 0;
        for (std::size_t i = 1; i < cpts.size(); ++i) {
            if (cpts[i][0] < cpts[imin][0]) imin = i;
            if (cpts[i][0] > cpts[imax][0]) imax = i;
        }
        found[{IntVec{Int(1)}, cpts[imin][0]}] = {imin};
        found[{IntVec{Int(-1)}, -cpts[imax][0]}] = {imax};
    } else {
        // every d-subset spanning a hyperplane, tested for one-sidedness
        std::vector<bool> select(cpts.size(), false);
        std::fill(select.begin(), select.begin() + d, true);
        std::vector<std::size_t> subset;
        // iterate over combinations via std::prev_permutation on the mask
        do {
            subset.clear();
            for (std::size_t i = 0; i < cpts.size(); ++i)
                if (select[i]) subset.push_back(i);
            std::vector<IntVec> rows;
            for (std::size_t k = 1; k < d; ++k)
                rows.push_back(sub(cpts[subset[k]], cpts[subset[0]]));
            IntVec rho = cross_general(rows, d);
            if (is_zero(rho)) continue;  // degenerate subset
            Int b = dot(rho, cpts[subset[0]]);
            bool pos = false, negv = false;
            for (const IntVec& q : cpts) {
                int s = sgn(dot(rho, q) - b);
                if (s > 0) pos = true;
                if (s < 0) negv = true;
                if (pos && negv) break;
            }
            if (pos && negv) continue;
            if (negv) {
                rho = neg(rho);
                b = -b;
            }
            rho = primitive_vector(rho);
            b = dot(rho, cpts[subset[0]]);
            std::set<std::size_t> tight;
            for (std::size_t i = 0; i < cpts.size(); ++i)
                if (dot(rho, cpts[i]) == b) tight.insert(i);
            found[{rho, b}] = std::move(tight);
        } while (std::prev_permutation(select.begin(), select.end()));
    }

    // vertices: points whose tight facet normals span the chart space
    std::vector<std::vector<const IntVec*>> tight_normals(cpts.size());
    for (const auto& [key, tight] : found)
        for (std::size_t i : tight) tight_normals[i].push_back(&key.first);
    std::vector<std::size_t> vertex_of_point(cpts.size(), SIZE_MAX);
    for (std::size_t i = 0; i < cpts.size(); ++i) {
        std::vector<IntVec> normals;
        for (const IntVec* v : tight_normals[i]) normals.push_back(*v);
        if (rank_of(normals, d) == d) {
            vertex_of_point[i] = poly.vertices.size();
            poly.vertices.push_back(pts[i]);
            poly.chart_vertices.push_back(cpts[i]);
        }
    }

    for (const auto& [key, tight] : found) {
        FacetData f;
        f.normal = key.first;
        f.offset = key.second;
        for (std::size_t i : tight)
            if (vertex_of_point[i] != SIZE_MAX) f.incident.push_back(vertex_of_point[i]);
        std::sort(f.incident.begin(), f.incident.end());
        if (f.incident.size() < d)
            throw std::logic_error("convex_hull: facet with too few incident vertices");
        poly.facets.push_back(std::move(f));
    }
    return poly;
}

std::vector<Face> faces_of_codim_one(const LatticePolytope& p) {
    std::vector<Face> out;
    if (p.dim == 0) {
        Face empty;
        empty.dim = -1;
        empty.chart.ambient_dim = p.ambient_dim;
        out.push_back(std::move(empty));
        return out;
    }
    for (const FacetData& fd : p.facets) {
        Face f;
        f.vertex_indices = fd.incident;
        f.dim = p.dim - 1;
        const IntVec& anchor = p.vertices[fd.incident[0]];
        std::vector<IntVec> edges;
        for (std::size_t i : fd.incident) edges.push_back(sub(p.vertices[i], anchor));
        f.chart.ambient_dim = p.ambient_dim;
        f.chart.anchor = anchor;
        f.chart.basis = lattice_basis_of_span(edges, p.ambient_dim);
        if (f.chart.basis.size() != static_cast<std::size_t>(f.dim))
            throw std::logic_error("faces_of_codim_one: facet span has wrong dimension");
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<IntVec> face_points(const LatticePolytope& parent, const Face& f) {
    std::vector<IntVec> pts;
    for (std::size_t i : f.vertex_indices) pts.push_back(parent.vertices[i]);
    return pts;
}

LatticePolytope face_polytope(const LatticePolytope& parent, const Face& f) {
    require(f.dim >= 0, "face_polytope: the empty face has no polytope");
    return convex_hull(face_points(parent, f));
}

Int normalized_volume_from_anchor(const LatticePolytope& p, std::size_t anchor_vertex) {
    require(anchor_vertex < p.vertices.size(), "normalized_volume: anchor out of range");
    const std::size_t d = static_cast<std::size_t>(p.dim);
    if (d == 0) return 1;
    if (d == 1) {
        Int lo = p.chart_vertices[0][0], hi = lo;
        for (const IntVec& v : p.chart_vertices) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        return hi - lo;
    }
    if (p.vertices.size() == d + 1) {
        IntMatrix m(d, d);
        std::size_t r = 0;
        for (std::size_t i = 0; i < p.chart_vertices.size(); ++i) {
            if (i == anchor_vertex) continue;
            IntVec e = sub(p.chart_vertices[i], p.chart_vertices[anchor_vertex]);
            for (std::size_t j = 0; j < d; ++j) m.at(r, j) = e[j];
            ++r;
        }
        return abs(determinant(m));
    }
    const IntVec& apex = p.chart_vertices[anchor_vertex];
    Int total = 0;
    for (const FacetData& fd : p.facets) {
        Int height = dot(fd.normal, apex) - fd.offset;
        if (height == 0) continue;
        std::vector<IntVec> fpts;
        for (std::size_t i : fd.incident) fpts.push_back(p.chart_vertices[i]);
        total += height * normalized_volume(convex_hull(fpts));
    }
    return total;
}

Int normalized_volume(const LatticePolytope& p) { return normalized_volume_from_anchor(p, 0); }

Int normalized_volume(const LatticePolytope& parent, const Face& f) {
    if (f.dim < 0) throw std::invalid_argument("normalized_volume: empty face has no volume");
    if (f.dim == 0) return 1;
    return normalized_volume(face_polytope(parent, f));
}

std::pair<IntVec, Int> inner_conormal(const LatticePolytope& p, const Face& f) {
    require(f.dim == p.dim - 1, "inner_conormal: face is not of codimension one");
    std::vector<std::size_t> want = f.vertex_indices;
    std::sort(want.begin(), want.end());
    for (const FacetData& fd : p.facets)
        if (fd.incident == want) return {fd.normal, fd.offset};
    throw std::invalid_argument("inner_conormal: face is not a facet of the polytope");
}

std::pair<IntVec, Int> facet_through(const LatticePolytope& p,
                                     const std::vector<IntVec>& points) {
    std::vector<IntVec> want = points;
    std::sort(want.begin(), want.end());
    for (const FacetData& fd : p.facets) {
        std::vector<IntVec> have;
        for (std::size_t i : fd.incident) have.push_back(p.vertices[i]);
        std::sort(have.begin(), have.end());
        if (have == want) return {fd.normal, fd.offset};
    }
    throw std::invalid_argument("facet_through: no facet with the given vertex set");
}

Int lattice_height(const IntVec& rho, const Int& offset, const IntVec& a) {
    return dot(rho, a) - offset;
}

bool contains(const LatticePolytope& p, const IntVec& ambient_point) {
    auto xi = to_chart(p.chart, ambient_point);
    if (!xi) return false;
    if (p.dim == 0) return true;  // chart membership already pins the point
    for (const FacetData& fd : p.facets)
        if (dot(fd.normal, *xi) < fd.offset) return false;
    return true;
}

bool on_facet_hyperplane(const LatticePolytope& p, std::size_t facet_index,
                         const IntVec& ambient_point) {
    require(facet_index < p.facets.size(), "on_facet_hyperplane: index out of range");
    auto xi = to_chart(p.chart, ambient_point);
    if (!xi) return false;
    const FacetData& fd = p.facets[facet_index];
    return dot(fd.normal, *xi) == fd.offset;
}

}  // namespace ahg
