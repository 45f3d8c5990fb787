#include "ahg/monodromy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ahg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResonanceTol = 1e-9;
constexpr double kResonanceWarnBand = 1e-6;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer out of machine range");
    return v.get_si();
}

cd expi_turns(double turns) {
    double t = kTwoPi * turns;
    return {std::cos(t), std::sin(t)};
}

template <typename C>
C powi(C base, std::int64_t e) {
    if (e < 0) return powi(C(1.0) / base, -e);
    C acc(1.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

IntVec zero_vec(std::size_t n) { return IntVec(n, Int(0)); }

LatticePolytope hull_with_origin(const PointConfiguration& a) {
    std::vector<IntVec> pts = a.points;
    pts.push_back(zero_vec(a.n));
    return convex_hull(pts);
}

}  // namespace

ParameterVector ParameterVector::from_rational(std::vector<Rat> entries) {
    ParameterVector p;
    p.mode = ParamMode::Exact;
    p.exact = std::move(entries);
    for (Rat& q : p.exact) q.canonicalize();
    return p;
}

ParameterVector ParameterVector::from_complex(std::vector<cd> entries) {
    ParameterVector p;
    p.mode = ParamMode::Float;
    p.approx = std::move(entries);
    return p;
}

std::size_t ParameterVector::size() const {
    return mode == ParamMode::Exact ? exact.size() : approx.size();
}

cd ParameterVector::value(std::size_t i) const {
    return mode == ParamMode::Exact ? cd(rat_to_double(exact[i]), 0.0) : approx[i];
}

CoefficientVector CoefficientVector::from_rational(std::vector<Rat> entries) {
    CoefficientVector v;
    v.mode = ParamMode::Exact;
    v.exact = std::move(entries);
    for (Rat& q : v.exact) q.canonicalize();
    return v;
}

CoefficientVector CoefficientVector::from_complex(std::vector<cd> entries) {
    CoefficientVector v;
    v.mode = ParamMode::Float;
    v.approx = std::move(entries);
    return v;
}

std::size_t CoefficientVector::size() const {
    return mode == ParamMode::Exact ? exact.size() : approx.size();
}

cd CoefficientVector::value(std::size_t i) const {
    return mode == ParamMode::Exact ? cd(rat_to_double(exact[i]), 0.0) : approx[i];
}

ValidationReport validate_configuration(const PointConfiguration& a) {
    ValidationReport r;
    r.ambient_dim = a.n;
    require(a.n >= 1, "validate_configuration: ambient dimension must be positive");
    require(!a.points.empty(), "validate_configuration: no points");
    for (const IntVec& p : a.points)
        require(p.size() == a.n, "validate_configuration: point of wrong dimension");

    SnfResult snf = smith_normal_form(IntMatrix::from_cols(a.points));
    r.snf_divisors = snf.divisors;
    r.generates_lattice = true;
    for (const Int& d : r.snf_divisors)
        if (d != 1) r.generates_lattice = false;

    r.delta_dim = hull_with_origin(a).dim;
    r.full_dimensional = r.delta_dim == static_cast<int>(a.n);

    r.pass = r.generates_lattice && r.full_dimensional;
    if (!r.generates_lattice) {
        std::ostringstream os;
        os << "A does not generate Z^n (divisors: [";
        for (std::size_t i = 0; i < r.snf_divisors.size(); ++i)
            os << (i ? ", " : "") << r.snf_divisors[i];
        os << "])";
        r.message = os.str();
    } else if (!r.full_dimensional) {
        std::ostringstream os;
        os << "conv(A ∪ {0}) has dimension " << r.delta_dim << " < " << a.n;
        r.message = os.str();
    }
    return r;
}

ResonanceReport check_nonresonance(const PointConfiguration& a, const ParameterVector& c) {
    require(c.size() == a.n, "check_nonresonance: parameter vector has wrong length");
    ResonanceReport rep;
    LatticePolytope delta = hull_with_origin(a);
    require(delta.dim == static_cast<int>(a.n),
            "check_nonresonance: conv(A ∪ {0}) is not full-dimensional");
    for (const FacetData& fd : delta.facets) {
        if (fd.offset != 0) continue;  // facet does not contain the origin
        ResonanceFacetCheck chk;
        chk.rho = fd.normal;
        for (std::size_t i : fd.incident) chk.facet_vertices.push_back(delta.vertices[i]);
        if (c.mode == ParamMode::Exact) {
            Rat pairing = 0;
            for (std::size_t k = 0; k < a.n; ++k) pairing += Rat(fd.normal[k]) * c.exact[k];
            pairing.canonicalize();
            chk.pairing_exact = pairing;
            chk.integral = (pairing.get_den() == 1);
        } else {
            cd pairing(0.0, 0.0);
            for (std::size_t k = 0; k < a.n; ++k)
                pairing += cd(fd.normal[k].get_d(), 0.0) * c.approx[k];
            chk.pairing_float = pairing;
            double nearest = std::round(pairing.real());
            chk.distance_to_integer = std::abs(pairing - cd(nearest, 0.0));
            chk.integral = chk.distance_to_integer <= kResonanceTol;
            chk.warning = !chk.integral && chk.distance_to_integer <= kResonanceWarnBand;
        }
        rep.checks.push_back(std::move(chk));
    }
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        if (rep.checks[i].integral) {
            rep.status = ResonanceStatus::Resonant;
            rep.witness = i;
            return rep;
        }
    }
    for (const ResonanceFacetCheck& chk : rep.checks)
        if (chk.warning) rep.status = ResonanceStatus::NonResonantNearInteger;
    return rep;
}

std::vector<FacetContribution> relevant_facet_data(const PointConfiguration& a,
                                                   std::size_t j0) {
    // The formula only needs conv(A ∪ {0}) to be n-dimensional; the lattice
    // generation hypothesis is reported, not enforced (the combinatorics is
    // well-defined without it).
    ValidationReport val = validate_configuration(a);
    require(val.full_dimensional,
            "relevant_facet_data: conv(A ∪ {0}) is not full-dimensional: " + val.message);
    require(j0 >= 1 && j0 <= a.count(), "relevant_facet_data: j0 out of range");

    const IntVec& apt = a.points[j0 - 1];
    LatticePolytope delta = hull_with_origin(a);
    const IntVec origin = zero_vec(a.n);

    std::vector<FacetContribution> out;
    for (const FacetData& fd : delta.facets) {
        if (fd.offset == 0) continue;                       // 0 ∈ Δ_i
        if (dot(fd.normal, apt) != fd.offset) continue;     // a(j0) ∉ Δ_i
        FacetContribution contrib;
        for (std::size_t i : fd.incident) contrib.delta_points.push_back(delta.vertices[i]);

        LatticePolytope delta_i = convex_hull(contrib.delta_points);

        // sub-facets Γ_ij of Δ_i with a(j0) ∉ Γ_ij
        std::vector<std::vector<IntVec>> gamma_vertex_sets;
        if (delta_i.dim == 0) {
            gamma_vertex_sets.push_back({});  // the empty face
        } else {
            auto xi_a = to_chart(delta_i.chart, apt);
            if (!xi_a) throw std::logic_error("relevant_facet_data: a(j0) escapes its facet chart");
            for (const FacetData& g : delta_i.facets) {
                if (dot(g.normal, *xi_a) == g.offset) continue;  // a(j0) ∈ Γ
                std::vector<IntVec> pts;
                for (std::size_t i : g.incident) pts.push_back(delta_i.vertices[i]);
                gamma_vertex_sets.push_back(std::move(pts));
            }
        }

        std::vector<IntVec> hat_pts = contrib.delta_points;
        hat_pts.push_back(origin);
        LatticePolytope delta_hat = convex_hull(hat_pts);
        contrib.vol_delta_hat = normalized_volume(delta_hat);

        Int pyramid_sum = 0;
        for (std::vector<IntVec>& gpts : gamma_vertex_sets) {
            GammaContribution gc;
            gc.gamma_points = gpts;
            std::vector<IntVec> gh = gpts;
            gh.push_back(origin);
            gc.vol_gamma_hat = normalized_volume(convex_hull(gh));
            auto [rho, b] = facet_through(delta_hat, gh);
            if (b != 0) throw std::logic_error("relevant_facet_data: hat facet misses the origin");
            gc.rho = rho;
            gc.height = lattice_height(rho, b, apt);
            if (gc.height <= 0)
                throw std::logic_error("relevant_facet_data: nonpositive lattice height");
            pyramid_sum += gc.height * gc.vol_gamma_hat;
            contrib.gammas.push_back(std::move(gc));
        }
        if (pyramid_sum != contrib.vol_delta_hat)
            throw std::logic_error("relevant_facet_data: pyramid identity failed");
        out.push_back(std::move(contrib));
    }
    return out;
}

MonodromyReport monodromy_at_infinity(const PointConfiguration& a, const ParameterVector& c,
                                      std::size_t j0, LoopOrientation orientation) {
    require(c.size() == a.n, "monodromy_at_infinity: parameter vector has wrong length");
    MonodromyReport rep;
    rep.j0 = j0;
    rep.orientation = orientation;
    rep.contributions = relevant_facet_data(a, j0);

    LatticePolytope delta = hull_with_origin(a);
    rep.degree = normalized_volume(delta);
    Int sum_hat = 0;
    for (const FacetContribution& fc : rep.contributions) sum_hat += fc.vol_delta_hat;
    rep.t_minus_one_exponent = rep.degree - sum_hat;
    if (rep.t_minus_one_exponent < 0)
        throw std::logic_error("monodromy_at_infinity: negative (t-1) exponent");

    const int sign = orientation == LoopOrientation::Ccw ? -1 : 1;
    std::vector<Factor> factors;
    for (const FacetContribution& fc : rep.contributions) {
        for (const GammaContribution& gc : fc.gammas) {
            UnitScalar mu;
            if (c.mode == ParamMode::Exact) {
                Rat pairing = 0;
                for (std::size_t k = 0; k < a.n; ++k) pairing += Rat(gc.rho[k]) * c.exact[k];
                mu = UnitScalar::from_angle(Rat(sign) * pairing);
            } else {
                cd pairing(0.0, 0.0);
                for (std::size_t k = 0; k < a.n; ++k)
                    pairing += cd(gc.rho[k].get_d(), 0.0) * c.approx[k];
                // exp(2 pi i * sign * pairing) for complex pairing
                cd w = cd(0.0, kTwoPi * sign) * pairing;
                mu = UnitScalar::from_complex(std::exp(w));
            }
            factors.push_back(make_factor(to_i64(gc.height), mu, to_i64(gc.vol_gamma_hat)));
        }
    }
    if (rep.t_minus_one_exponent > 0) {
        UnitScalar one = c.mode == ParamMode::Exact ? UnitScalar::from_angle(Rat(0))
                                                    : UnitScalar::from_complex(cd(1.0, 0.0));
        factors.push_back(make_factor(1, one, to_i64(rep.t_minus_one_exponent)));
    }
    rep.char_poly = product(factors);
    if (Int(rep.char_poly.degree()) != rep.degree)
        throw std::logic_error("monodromy_at_infinity: degree mismatch");

    rep.lattice_generated = validate_configuration(a).generates_lattice;
    rep.resonance = check_nonresonance(a, c);
    rep.theorem_hypotheses_met =
        rep.lattice_generated && rep.resonance.status != ResonanceStatus::Resonant;
    return rep;
}

namespace {

using cld = std::complex<long double>;
using CMatLd = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

// Faddeev-LeVerrier characteristic polynomial, leading coefficient first.
std::vector<cld> charpoly_faddeev(const CMatLd& a) {
    const Eigen::Index m = a.rows();
    std::vector<cld> c(static_cast<std::size_t>(m) + 1);
    c[0] = cld(1.0L);
    CMatLd acc = CMatLd::Zero(m, m);
    for (Eigen::Index k = 1; k <= m; ++k) {
        acc = a * (acc + c[k - 1] * CMatLd::Identity(m, m)).eval();
        c[k] = -acc.trace() / cld(static_cast<long double>(k));
    }
    return c;
}

std::pair<cld, cld> epsilons_ld(const ParameterVector& c) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    if (c.mode == ParamMode::Exact) {
        long double c1 = static_cast<long double>(c.exact[0].get_d());
        long double c2 = static_cast<long double>(c.exact[1].get_d());
        return {std::polar(1.0L, two_pi * c1), std::polar(1.0L, -two_pi * c2)};
    }
    cld i2pi(0.0L, two_pi);
    cld c1(c.approx[0].real(), c.approx[0].imag());
    cld c2(c.approx[1].real(), c.approx[1].imag());
    return {std::exp(i2pi * c1), std::exp(-i2pi * c2)};
}

}  // namespace

Phi1Matrices phi1_matrix(std::int64_t p, std::int64_t h, std::int64_t d1,
                         const ParameterVector& c) {
    require(h >= 1 && d1 >= 1, "phi1_matrix: h and d1 must be >= 1");
    require(c.size() == 2, "phi1_matrix: c must have two entries");
    auto [e1l, e2l] = epsilons_ld(c);
    const cd eps1(static_cast<double>(e1l.real()), static_cast<double>(e1l.imag()));
    const cd eps2(static_cast<double>(e2l.real()), static_cast<double>(e2l.imag()));

    CMat cyc = CMat::Zero(h, h);
    cyc(0, h - 1) = eps2;
    for (std::int64_t i = 1; i < h; ++i) cyc(i, i - 1) = cd(1.0, 0.0);

    CMat kpow = CMat::Identity(h, h);
    if (p >= 0) {
        for (std::int64_t i = 0; i < p; ++i) kpow = (kpow * cyc).eval();
    } else {
        CMat inv = CMat::Zero(h, h);
        inv(h - 1, 0) = cd(1.0, 0.0) / eps2;
        for (std::int64_t i = 1; i < h; ++i) inv(i - 1, i) = cd(1.0, 0.0);
        for (std::int64_t i = 0; i < -p; ++i) kpow = (kpow * inv).eval();
    }

    Phi1Matrices out;
    out.K = eps1 * kpow;

    const std::int64_t m = h * d1;
    out.L = CMat::Zero(m, m);
    for (std::int64_t i = 0; i + 1 < d1; ++i)
        out.L.block(h * (i + 1), h * i, h, h) = CMat::Identity(h, h);
    out.L.block(0, h * (d1 - 1), h, h) = out.K;

    // the same operator from the index-map action on the basis delta_{i,j}
    out.L_from_index_map = CMat::Zero(m, m);
    for (std::int64_t i = 1; i <= d1; ++i) {
        for (std::int64_t j = 1; j <= h; ++j) {
            std::int64_t col = (i - 1) * h + (j - 1);
            if (i < d1) {
                out.L_from_index_map(i * h + (j - 1), col) = cd(1.0, 0.0);
            } else {
                std::int64_t mm = j + p;
                std::int64_t rem = ((mm - 1) % h + h) % h + 1;  // [mm]_h in [1, h]
                std::int64_t wraps = (mm - rem) / h;            // {mm}_h
                out.L_from_index_map(rem - 1, col) = eps1 * powi(eps2, wraps);
            }
        }
    }

    double diff = (out.L - out.L_from_index_map).cwiseAbs().maxCoeff();
    if (diff > 1e-10)
        throw std::logic_error("phi1_matrix: block and index-map constructions disagree");
    return out;
}

Phi1IdentityReport phi1_charpoly_identity(std::int64_t p, std::int64_t h, std::int64_t d1,
                                          const ParameterVector& c) {
    Phi1Matrices mats = phi1_matrix(p, h, d1, c);

    CMatLd lld(mats.L.rows(), mats.L.cols());
    for (Eigen::Index i = 0; i < mats.L.rows(); ++i)
        for (Eigen::Index j = 0; j < mats.L.cols(); ++j)
            lld(i, j) = cld(mats.L(i, j).real(), mats.L(i, j).imag());
    std::vector<cld> num = charpoly_faddeev(lld);

    Phi1IdentityReport rep;
    for (const cld& x : num)
        rep.charpoly_numeric.push_back(cd(static_cast<double>(x.real()),
                                          static_cast<double>(x.imag())));

    // the zeta-product side: prod over the h-th roots zeta of eps2 of
    // (t^{d1} - eps1 * zeta^p)
    std::vector<Factor> factors;
    if (c.mode == ParamMode::Exact) {
        Rat c1 = c.exact[0], c2 = c.exact[1];
        for (std::int64_t k = 0; k < h; ++k) {
            Rat zeta_angle = (Rat(-1) * c2 + Rat(k)) / Rat(h);
            Rat mu_angle = c1 + Rat(p) * zeta_angle;
            factors.push_back(make_factor(d1, UnitScalar::from_angle(mu_angle), 1));
        }
    } else {
        cd c1 = c.approx[0], c2 = c.approx[1];
        for (std::int64_t k = 0; k < h; ++k) {
            cd zeta = std::exp((cd(0.0, -kTwoPi) * c2 + cd(0.0, kTwoPi * k)) /
                               cd(static_cast<double>(h), 0.0));
            cd mu = std::exp(cd(0.0, kTwoPi) * c1) * powi(zeta, p);
            factors.push_back(make_factor(d1, UnitScalar::from_complex(mu), 1));
        }
    }
    rep.charpoly_product = expand(product(factors));

    double worst = 0.0;
    for (std::size_t i = 0; i < rep.charpoly_numeric.size(); ++i)
        worst = std::max(worst, std::abs(rep.charpoly_numeric[i] - rep.charpoly_product[i]));
    rep.max_coeff_error = worst;
    rep.pass = worst <= 1e-10;
    return rep;
}

namespace {

// ---- univariate helpers for the non-degeneracy check ----

using RatPoly = std::vector<Rat>;  // ascending powers

bool rat_poly_zero(const RatPoly& p) {
    for (const Rat& c : p)
        if (c != 0) return false;
    return true;
}

RatPoly rat_poly_trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

RatPoly rat_poly_derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rat(static_cast<long>(k)));
    return rat_poly_trim(d);
}

RatPoly rat_poly_mod(RatPoly a, const RatPoly& b) {
    a = rat_poly_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a = rat_poly_trim(a);
    }
    return a;
}

RatPoly rat_poly_gcd(RatPoly a, RatPoly b) {
    a = rat_poly_trim(a);
    b = rat_poly_trim(b);
    while (!b.empty()) {
        RatPoly r = rat_poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// determinant by LU with partial pivoting
cd det_complex(std::vector<std::vector<cd>> m) {
    const std::size_t n = m.size();
    cd det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (std::abs(m[piv][k]) == 0.0) return cd(0.0, 0.0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            cd f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

// resultant of f and f' via the Sylvester matrix; coefficients ascending
cd resultant_with_derivative(const std::vector<cd>& f) {
    std::vector<cd> g;
    for (std::size_t k = 1; k < f.size(); ++k) g.push_back(f[k] * cd(static_cast<double>(k), 0.0));
    const std::size_t df = f.size() - 1, dg = g.size() - 1;
    const std::size_t n = df + dg;
    std::vector<std::vector<cd>> s(n, std::vector<cd>(n, cd(0.0, 0.0)));
    for (std::size_t r = 0; r < dg; ++r)
        for (std::size_t k = 0; k < f.size(); ++k) s[r][r + k] = f[f.size() - 1 - k];
    for (std::size_t r = 0; r < df; ++r)
        for (std::size_t k = 0; k < g.size(); ++k) s[dg + r][r + k] = g[g.size() - 1 - k];
    return det_complex(std::move(s));
}

struct EnumeratedFace {
    std::vector<IntVec> pts;  // sorted vertex points
    LatticePolytope poly;
};

void collect_faces(const LatticePolytope& p,
                   std::map<std::vector<IntVec>, LatticePolytope>& out) {
    for (const Face& f : faces_of_codim_one(p)) {
        if (f.dim < 0) continue;  // the empty face carries no monomials
        std::vector<IntVec> pts = face_points(p, f);
        std::sort(pts.begin(), pts.end());
        if (out.count(pts)) continue;
        LatticePolytope sub = convex_hull(pts);
        out.emplace(pts, sub);
        collect_faces(sub, out);
    }
}

}  // namespace

NondegeneracyReport check_nondegeneracy(const PointConfiguration& a,
                                        const CoefficientVector& z) {
    ValidationReport val = validate_configuration(a);
    require(val.full_dimensional,
            "check_nondegeneracy: conv(A ∪ {0}) is not full-dimensional: " + val.message);
    require(z.size() == a.count(), "check_nondegeneracy: z has wrong length");

    LatticePolytope delta = hull_with_origin(a);
    const IntVec origin = zero_vec(a.n);

    std::map<std::vector<IntVec>, LatticePolytope> faces;
    collect_faces(delta, faces);

    NondegeneracyReport rep;
    for (const auto& [pts, fp] : faces) {
        if (contains(fp, origin)) continue;  // only faces avoiding 0
        FaceCheck chk;
        chk.face_points = pts;
        chk.dim = fp.dim;

        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < a.count(); ++j)
            if (contains(fp, a.points[j])) support.push_back(j);

        if (fp.dim == 0) {
            if (z.mode == ParamMode::Exact) {
                Rat s = 0;
                for (std::size_t j : support) s += z.exact[j];
                chk.verdict = (s != 0) ? FaceVerdict::Nondegenerate : FaceVerdict::Degenerate;
                chk.detail = (s != 0) ? "vertex coefficient nonzero" : "vertex coefficient vanishes";
            } else {
                cd s(0.0, 0.0);
                for (std::size_t j : support) s += z.approx[j];
                bool ok = std::abs(s) > kResonanceTol;
                chk.verdict = ok ? FaceVerdict::Nondegenerate : FaceVerdict::Degenerate;
                chk.detail = ok ? "vertex coefficient nonzero" : "vertex coefficient vanishes";
            }
        } else if (fp.dim == 1) {
            // positions along the edge in its saturated chart
            std::vector<std::pair<std::size_t, std::size_t>> terms;  // (exponent, j)
            std::size_t max_k = 0;
            for (std::size_t j : support) {
                auto xi = to_chart(fp.chart, a.points[j]);
                if (!xi || xi->size() != 1 || (*xi)[0] < 0)
                    throw std::logic_error("check_nondegeneracy: edge chart failure");
                std::size_t k = static_cast<std::size_t>(to_i64((*xi)[0]));
                terms.push_back({k, j});
                max_k = std::max(max_k, k);
            }
            if (z.mode == ParamMode::Exact) {
                RatPoly g(max_k + 1, Rat(0));
                for (auto [k, j] : terms) g[k] += z.exact[j];
                if (rat_poly_zero(g)) {
                    chk.verdict = FaceVerdict::Degenerate;
                    chk.detail = "edge polynomial vanishes identically";
                } else {
                    std::size_t lo = 0;
                    while (g[lo] == 0) ++lo;
                    RatPoly g0(g.begin() + lo, g.end());
                    g0 = rat_poly_trim(g0);
                    RatPoly gc = rat_poly_gcd(g0, rat_poly_derivative(g0));
                    bool ok = gc.size() <= 1;
                    chk.verdict = ok ? FaceVerdict::Nondegenerate : FaceVerdict::Degenerate;
                    chk.detail = ok ? "edge polynomial squarefree (exact gcd)"
                                    : "edge polynomial has a repeated torus root";
                }
            } else {
                std::vector<cd> g(max_k + 1, cd(0.0, 0.0));
                for (auto [k, j] : terms) g[k] += z.approx[j];
                double scale = 0.0;
                for (const cd& x : g) scale = std::max(scale, std::abs(x));
                if (scale == 0.0) {
                    chk.verdict = FaceVerdict::Degenerate;
                    chk.detail = "edge polynomial vanishes identically";
                } else {
                    std::size_t lo = 0, hi = g.size();
                    while (lo < hi && std::abs(g[lo]) == 0.0) ++lo;
                    while (hi > lo && std::abs(g[hi - 1]) == 0.0) --hi;
                    std::vector<cd> g0(g.begin() + lo, g.begin() + hi);
                    for (cd& x : g0) x /= scale;
                    if (g0.size() <= 1) {
                        chk.verdict = FaceVerdict::Nondegenerate;
                        chk.detail = "edge polynomial is a single monomial";
                    } else {
                        double res = std::abs(resultant_with_derivative(g0));
                        bool ok = res > kResonanceTol;
                        chk.verdict = ok ? FaceVerdict::Nondegenerate : FaceVerdict::Degenerate;
                        std::ostringstream os;
                        os << "normalized |resultant(g, g')| = " << res;
                        chk.detail = os.str();
                    }
                }
            }
        } else {
            chk.verdict = FaceVerdict::Unchecked;
            chk.detail = "faces of dimension >= 2 need elimination theory; not checked";
        }
        rep.faces.push_back(std::move(chk));
    }

    rep.overall = FaceVerdict::Nondegenerate;
    for (const FaceCheck& chk : rep.faces)
        if (chk.verdict == FaceVerdict::Unchecked) rep.overall = FaceVerdict::Unchecked;
    for (const FaceCheck& chk : rep.faces)
        if (chk.verdict == FaceVerdict::Degenerate) rep.overall = FaceVerdict::Degenerate;
    return rep;
}

}  // namespace ahg
