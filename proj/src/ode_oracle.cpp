#include "ahg/ode_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ahg/lattice_geometry.hpp"

namespace ahg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

cd horner(const std::vector<cd>& ascending, cd z) {
    cd acc(0.0, 0.0);
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

cd RationalFunction::operator()(cd z) const { return horner(num, z) / horner(den, z); }

CMat OdeSystem::eval(cd z) const {
    CMat m(size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) m(i, j) = coeff[i][j](z);
    return m;
}

PointConfiguration catalog_configuration(const std::string& id) {
    if (id == "power") return {1, {{Int(1)}}};
    if (id == "hermite") return {1, {{Int(1)}, {Int(2)}}};
    if (id == "kummer_square")
        return {2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}}};
    throw std::invalid_argument("unknown catalog id: " + id);
}

std::size_t catalog_j0(const std::string& id) {
    if (id == "power") return 1;
    if (id == "hermite") return 2;
    if (id == "kummer_square") return 3;
    throw std::invalid_argument("unknown catalog id: " + id);
}

OdeSystem catalog_system(const std::string& id, const ParameterVector& c,
                         const std::vector<cd>& frozen) {
    OdeSystem sys;
    sys.id = id;
    sys.c = c;
    const cd zero(0.0, 0.0), one(1.0, 0.0);

    if (id == "power") {
        require(c.size() == 1, "power: c must have one entry");
        sys.size = 1;
        sys.frozen = {};
        cd cv = c.value(0);
        // (z d/dz + c) u = 0  =>  u' = -(c/z) u
        sys.coeff = {{RationalFunction{{-cv}, {zero, one}}}};
        sys.singular_moduli = {0.0};
        return sys;
    }
    if (id == "hermite") {
        require(c.size() == 1, "hermite: c must have one entry");
        sys.size = 2;
        sys.frozen = frozen.empty() ? std::vector<cd>{one} : frozen;
        require(sys.frozen.size() == 1 && std::abs(sys.frozen[0]) > 0.0,
                "hermite: one nonzero frozen coordinate required");
        cd cv = c.value(0);
        cd s = sys.frozen[0];
        // restriction along z2 with z1 = s:
        //   4 z^2 v'' + ((4c+6) z - s^2) v' + c(c+1) v = 0
        // companion form for y = (v, v')
        std::vector<cd> den{zero, zero, cd(4.0, 0.0)};  // 4 z^2
        sys.coeff = {
            {RationalFunction{{zero}, {one}}, RationalFunction{{one}, {one}}},
            {RationalFunction{{-cv * (cv + one)}, den},
             RationalFunction{{s * s, -(cd(4.0, 0.0) * cv + cd(6.0, 0.0))}, den}}};
        sys.singular_moduli = {0.0};
        return sys;
    }
    if (id == "kummer_square") {
        require(c.size() == 2, "kummer_square: c must have two entries");
        sys.size = 2;
        sys.frozen = frozen.empty() ? std::vector<cd>{one, one} : frozen;
        require(sys.frozen.size() == 2 && std::abs(sys.frozen[0]) > 0.0 &&
                    std::abs(sys.frozen[1]) > 0.0,
                "kummer_square: two nonzero frozen coordinates required");
        cd c1 = c.value(0), c2 = c.value(1);
        cd s12 = sys.frozen[0] * sys.frozen[1];
        // restriction along z3 with z1 z2 = s12:
        //   z^2 v'' + ((c1+c2+1) z - s12) v' + c1 c2 v = 0
        std::vector<cd> den{zero, zero, one};  // z^2
        sys.coeff = {
            {RationalFunction{{zero}, {one}}, RationalFunction{{one}, {one}}},
            {RationalFunction{{-c1 * c2}, den},
             RationalFunction{{s12, -(c1 + c2 + one)}, den}}};
        sys.singular_moduli = {0.0};
        return sys;
    }
    throw std::invalid_argument("unknown catalog id: " + id);
}

MonodromyMatrix numeric_monodromy(const OdeSystem& sys, std::optional<double> radius,
                                  double tol, double base_angle, bool reverse) {
    double max_sing = 0.0;
    for (double s : sys.singular_moduli) max_sing = std::max(max_sing, s);
    double r = radius ? *radius : std::max(10.0, 2.0 * max_sing);
    require(r > 0.0, "numeric_monodromy: radius must be positive");
    for (double s : sys.singular_moduli)
        require(r > s + 1e-12, "numeric_monodromy: radius does not clear a singularity");

    const double sigma = reverse ? -1.0 : 1.0;
    const std::size_t m = sys.size;
    auto deriv = [&](double theta, const CMat& y) -> CMat {
        cd z = std::polar(r, base_angle + sigma * theta);
        cd factor = cd(0.0, sigma) * z;  // dz/dtheta
        return (factor * sys.eval(z)) * y;
    };

    // Dormand-Prince 5(4)
    static const double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double cnode[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static const double b5[7] = {35.0 / 384,      0.0,      500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784,  11.0 / 84, 0.0};
    static const double b4[7] = {5179.0 / 57600,    0.0,         7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const double hmax = kTwoPi / 256.0;
    double h = hmax;
    double theta = 0.0;
    CMat y = CMat::Identity(m, m);
    MonodromyMatrix out;
    out.radius = r;

    std::size_t iterations = 0;
    for (;;) {
        double remaining = kTwoPi - theta;
        if (remaining <= 1e-12) break;
        if (++iterations > 2000000)
            throw std::runtime_error("numeric_monodromy: step count blowup (steps=" +
                                     std::to_string(out.steps) +
                                     ", rejected=" + std::to_string(out.rejected) + ")");
        if (h < 1e-13)
            throw std::runtime_error("numeric_monodromy: step size underflow at theta=" +
                                     std::to_string(theta));
        double hs = std::min({h, hmax, remaining});
        CMat k[7];
        k[0] = deriv(theta, y);
        for (int s = 1; s < 7; ++s) {
            CMat acc = y;
            for (int j = 0; j < s; ++j)
                if (a[s][j] != 0.0) acc += (hs * a[s][j]) * k[j];
            k[s] = deriv(theta + cnode[s] * hs, acc);
        }
        CMat y5 = y, errm = CMat::Zero(m, m);
        for (int s = 0; s < 7; ++s) {
            if (b5[s] != 0.0) y5 += (hs * b5[s]) * k[s];
            double db = b5[s] - b4[s];
            if (db != 0.0) errm += (hs * db) * k[s];
        }
        double err = errm.cwiseAbs().maxCoeff();
        // error-per-unit-step control: the accumulated transport error over
        // the whole loop stays at the order of tol
        double scale = tol * (hs / kTwoPi) * std::max(1.0, y5.cwiseAbs().maxCoeff());
        if (err <= scale) {
            theta += hs;
            y = std::move(y5);
            ++out.steps;
            out.error_estimate += err;
        } else {
            ++out.rejected;
        }
        double grow = (err == 0.0) ? 5.0 : 0.9 * std::pow(scale / err, 0.25);
        h = std::clamp(hs * std::clamp(grow, 0.2, 5.0), 0.0, hmax);
    }
    out.transport = std::move(y);
    return out;
}

SpectrumMultiset numeric_spectrum(const MonodromyMatrix& m) {
    require(m.transport.rows() == m.transport.cols(), "numeric_spectrum: square matrix required");
    require(m.transport.rows() <= 16, "numeric_spectrum: matrix too large");
    Eigen::ComplexEigenSolver<CMat> es(m.transport);
    std::vector<cd> vals;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) vals.push_back(es.eigenvalues()(i));
    std::sort(vals.begin(), vals.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    SpectrumMultiset out;
    std::vector<bool> used(vals.size(), false);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (used[i]) continue;
        cd sum = vals[i];
        std::int64_t mult = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < vals.size(); ++j) {
            if (!used[j] && std::abs(vals[j] - vals[i]) <= 1e-6) {
                sum += vals[j];
                ++mult;
                used[j] = true;
            }
        }
        out.entries.push_back(
            {UnitScalar::from_complex(sum / cd(static_cast<double>(mult), 0.0)), mult});
    }
    return out;
}

namespace {

struct BoundaryFacet {
    std::vector<std::size_t> verts;  // sorted, size d
    IntVec rho;
    Int offset;
};

Int simplex_volume(const std::vector<IntVec>& pts, const IntVec& apex) {
    const std::size_t d = apex.size();
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        IntVec e = sub(pts[i], apex);
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) = e[j];
    }
    return abs(determinant(m));
}

}  // namespace

Int volume_bruteforce(const std::vector<IntVec>& points) {
    require(!points.empty(), "volume_bruteforce: empty point list");
    const std::size_t n = points[0].size();
    for (const IntVec& p : points) require(p.size() == n, "volume_bruteforce: ragged points");

    std::vector<IntVec> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return 1;

    std::vector<IntVec> edges;
    for (std::size_t i = 1; i < pts.size(); ++i) edges.push_back(sub(pts[i], pts[0]));
    std::vector<IntVec> basis = lattice_basis_of_span(edges, n);
    const std::size_t d = basis.size();

    Chart chart;
    chart.ambient_dim = n;
    chart.anchor = pts[0];
    chart.basis = basis;
    std::vector<IntVec> c;
    for (const IntVec& p : pts) {
        auto xi = to_chart(chart, p);
        if (!xi) throw std::logic_error("volume_bruteforce: chart failure");
        c.push_back(std::move(*xi));
    }

    if (d == 1) {
        Int lo = c[0][0], hi = c[0][0];
        for (const IntVec& v : c) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        return hi - lo;
    }

    // greedy affinely independent seed of d+1 points
    std::vector<std::size_t> seed{0};
    std::vector<IntVec> seed_edges;
    for (std::size_t i = 1; i < c.size() && seed.size() <= d; ++i) {
        std::vector<IntVec> trial = seed_edges;
        trial.push_back(sub(c[i], c[seed[0]]));
        if (lattice_basis_of_span(trial, d).size() > seed_edges.size()) {
            seed_edges = std::move(trial);
            seed.push_back(i);
        }
    }
    if (seed.size() != d + 1) throw std::logic_error("volume_bruteforce: no full-dimensional seed");

    Int vol = 0;
    {
        std::vector<IntVec> base;
        for (std::size_t i = 1; i < seed.size(); ++i) base.push_back(c[seed[i]]);
        vol = simplex_volume(base, c[seed[0]]);
    }

    // interior reference: centroid of the seed simplex, kept as a sum so the
    // orientation test <rho, ref_sum> vs (d+1)*offset stays integral
    IntVec ref_sum(d, Int(0));
    for (std::size_t i : seed)
        for (std::size_t j = 0; j < d; ++j) ref_sum[j] += c[i][j];

    auto make_facet = [&](std::vector<std::size_t> verts) -> BoundaryFacet {
        std::sort(verts.begin(), verts.end());
        std::vector<IntVec> rows;
        for (std::size_t i = 1; i < verts.size(); ++i)
            rows.push_back(sub(c[verts[i]], c[verts[0]]));
        IntVec rho = cross_general(rows, d);
        if (is_zero(rho)) throw std::logic_error("volume_bruteforce: degenerate facet");
        Int b = dot(rho, c[verts[0]]);
        int side = sgn(dot(rho, ref_sum) - Int(d + 1) * b);
        if (side == 0) throw std::logic_error("volume_bruteforce: reference on facet hyperplane");
        if (side < 0) {
            rho = neg(rho);
            b = -b;
        }
        return {std::move(verts), std::move(rho), std::move(b)};
    };

    std::vector<BoundaryFacet> boundary;
    for (std::size_t omit = 0; omit < seed.size(); ++omit) {
        std::vector<std::size_t> verts;
        for (std::size_t i = 0; i < seed.size(); ++i)
            if (i != omit) verts.push_back(seed[i]);
        boundary.push_back(make_facet(std::move(verts)));
    }

    for (std::size_t qi = 0; qi < c.size(); ++qi) {
        if (std::find(seed.begin(), seed.end(), qi) != seed.end()) continue;
        std::vector<bool> visible(boundary.size(), false);
        bool any = false;
        for (std::size_t f = 0; f < boundary.size(); ++f) {
            if (dot(boundary[f].rho, c[qi]) < boundary[f].offset) {
                visible[f] = true;
                any = true;
            }
        }
        if (!any) continue;  // beneath every facet: inside the current hull

        std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridge_owners;
        for (std::size_t f = 0; f < boundary.size(); ++f) {
            for (std::size_t omit = 0; omit < boundary[f].verts.size(); ++omit) {
                std::vector<std::size_t> ridge;
                for (std::size_t i = 0; i < boundary[f].verts.size(); ++i)
                    if (i != omit) ridge.push_back(boundary[f].verts[i]);
                ridge_owners[ridge].push_back(f);
            }
        }

        std::vector<BoundaryFacet> fresh;
        for (std::size_t f = 0; f < boundary.size(); ++f) {
            if (!visible[f]) continue;
            std::vector<IntVec> base;
            for (std::size_t v : boundary[f].verts) base.push_back(c[v]);
            vol += simplex_volume(base, c[qi]);
            for (std::size_t omit = 0; omit < boundary[f].verts.size(); ++omit) {
                std::vector<std::size_t> ridge;
                for (std::size_t i = 0; i < boundary[f].verts.size(); ++i)
                    if (i != omit) ridge.push_back(boundary[f].verts[i]);
                const auto& owners = ridge_owners[ridge];
                if (owners.size() != 2)
                    throw std::logic_error("volume_bruteforce: non-manifold boundary ridge");
                std::size_t other = owners[0] == f ? owners[1] : owners[0];
                if (visible[other]) continue;  // interior ridge of the visible patch
                std::vector<std::size_t> verts = ridge;
                verts.push_back(qi);
                fresh.push_back(make_facet(std::move(verts)));
            }
        }
        std::vector<BoundaryFacet> next;
        for (std::size_t f = 0; f < boundary.size(); ++f)
            if (!visible[f]) next.push_back(std::move(boundary[f]));
        for (BoundaryFacet& f : fresh) next.push_back(std::move(f));
        boundary = std::move(next);
    }
    return vol;
}

namespace {

// ---- series solutions for the catalog residual checks ----

double require_unit_interval(const Rat& q, const char* what) {
    if (!(q > 0 && q < 1))
        throw std::invalid_argument(std::string("catalog_residual: ") + what +
                                    " must lie strictly in (0,1)");
    return q.get_d();
}

// v(z) = sum_k coef_k * z^(lead - k), derivatives taken termwise
struct DescendingSeries {
    std::vector<double> coef;
    double lead = 0.0;

    cd eval(cd z, int deriv_order) const {
        cd acc(0.0, 0.0);
        for (std::size_t k = 0; k < coef.size(); ++k) {
            double lam = lead - static_cast<double>(k);
            double fac = 1.0;
            for (int d = 0; d < deriv_order; ++d) fac *= lam - d;
            acc += coef[k] * fac * std::pow(z, cd(lam - deriv_order, 0.0));
        }
        return acc;
    }
};

double rel_residual(cd lhs_sum, std::initializer_list<cd> magnitudes) {
    double scale = 1e-300;
    for (cd m : magnitudes) scale += std::abs(m);
    return std::abs(lhs_sum) / scale;
}

}  // namespace

double catalog_residual(const std::string& id, const ParameterVector& c) {
    require(c.mode == ParamMode::Exact, "catalog_residual: exact rational c required");
    const std::vector<cd> ray{cd(1.0, 0.0), cd(1.6, 0.0), cd(2.2, 0.0)};
    double worst = 0.0;

    if (id == "power") {
        double cv = require_unit_interval(c.exact[0], "c");
        for (cd z : ray) {
            cd v = std::pow(z, cd(-cv, 0.0));
            cd vp = -cv * std::pow(z, cd(-cv - 1.0, 0.0));
            cd res = vp + cd(cv, 0.0) / z * v;
            worst = std::max(worst, rel_residual(res, {vp, cv / z * v}));
        }
        return worst;
    }

    if (id == "hermite") {
        double cv = require_unit_interval(c.exact[0], "c");
        const double s = 1.0;
        const int kmax = 48;
        // a_k = (-1)^k sin(pi(1-c/2)) Gamma(c/2+k) / (pi (2k)!)
        DescendingSeries v;
        v.lead = -cv / 2.0;
        for (int k = 0; k <= kmax; ++k) {
            double lg = std::lgamma(cv / 2.0 + k) - std::lgamma(2.0 * k + 1.0);
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            v.coef.push_back(sign * std::sin(std::numbers::pi * (1.0 - cv / 2.0)) /
                             std::numbers::pi * std::exp(lg));
        }
        // scalar reduction: 4 z^2 v'' + ((4c+6) z - s^2) v' + c(c+1) v = 0
        for (cd z : ray) {
            cd v0 = v.eval(z, 0), v1 = v.eval(z, 1), v2 = v.eval(z, 2);
            cd t2 = 4.0 * z * z * v2;
            cd t1 = (cd(4.0 * cv + 6.0, 0.0) * z - cd(s * s, 0.0)) * v1;
            cd t0 = cd(cv * (cv + 1.0), 0.0) * v0;
            worst = std::max(worst, rel_residual(t2 + t1 + t0, {t2, t1, t0}));
        }
        // box relation of the original system on u(z1, z2) = sum a_k z1^{2k} z2^{-c/2-k}:
        // d1^2 u = d2 u
        {
            cd z1(1.0, 0.0), z2(1.3, 0.0);
            cd d11(0.0, 0.0), d2(0.0, 0.0);
            for (int k = 0; k <= kmax; ++k) {
                double lam = -cv / 2.0 - k;
                cd zterm = std::pow(z2, cd(lam, 0.0));
                if (k >= 1)
                    d11 += v.coef[k] * (2.0 * k) * (2.0 * k - 1.0) *
                           std::pow(z1, cd(2.0 * k - 2.0, 0.0)) * zterm;
                d2 += v.coef[k] * lam * std::pow(z1, cd(2.0 * k, 0.0)) *
                      std::pow(z2, cd(lam - 1.0, 0.0));
            }
            worst = std::max(worst, rel_residual(d11 - d2, {d11, d2}));
        }
        return worst;
    }

    if (id == "kummer_square") {
        double c1 = require_unit_interval(c.exact[0], "c1");
        double c2 = require_unit_interval(c.exact[1], "c2");
        const double s1 = 1.0, s2 = 1.0;
        const int kmax = 60;
        // b_k = (-1)^k sin(pi(1-c1)) Gamma(c1+k) / (pi k! Gamma(c1-c2+k+1))
        std::vector<double> b;
        for (int k = 0; k <= kmax; ++k) {
            double lg = std::lgamma(c1 + k) - std::lgamma(k + 1.0) -
                        std::lgamma(c1 - c2 + k + 1.0);
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            b.push_back(sign * std::sin(std::numbers::pi * (1.0 - c1)) / std::numbers::pi *
                        std::exp(lg));
        }
        DescendingSeries v;
        v.lead = -c1;
        v.coef = b;
        // scalar reduction: z^2 v'' + ((c1+c2+1) z - s1 s2) v' + c1 c2 v = 0
        for (cd z : ray) {
            cd v0 = v.eval(z, 0), v1 = v.eval(z, 1), v2 = v.eval(z, 2);
            cd t2 = z * z * v2;
            cd t1 = (cd(c1 + c2 + 1.0, 0.0) * z - cd(s1 * s2, 0.0)) * v1;
            cd t0 = cd(c1 * c2, 0.0) * v0;
            worst = std::max(worst, rel_residual(t2 + t1 + t0, {t2, t1, t0}));
        }
        // box relation d1 d2 u = d3 u on u = sum b_k z1^k z2^{c1-c2+k} z3^{-c1-k}
        {
            cd z1(1.0, 0.0), z2(1.0, 0.0), z3(1.4, 0.0);
            cd d12(0.0, 0.0), d3(0.0, 0.0);
            for (int k = 0; k <= kmax; ++k) {
                double e2 = c1 - c2 + k, e3 = -c1 - k;
                cd common = std::pow(z3, cd(e3, 0.0));
                if (k >= 1)
                    d12 += b[k] * static_cast<double>(k) * e2 *
                           std::pow(z1, cd(k - 1.0, 0.0)) * std::pow(z2, cd(e2 - 1.0, 0.0)) *
                           common;
                d3 += b[k] * e3 * std::pow(z1, cd(static_cast<double>(k), 0.0)) *
                      std::pow(z2, cd(e2, 0.0)) * std::pow(z3, cd(e3 - 1.0, 0.0));
            }
            worst = std::max(worst, rel_residual(d12 - d3, {d12, d3}));
        }
        return worst;
    }

    throw std::invalid_argument("unknown catalog id: " + id);
}

}  // namespace ahg
