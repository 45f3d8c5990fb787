#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "ahg/monodromy_engine.hpp"

using namespace ahg;

namespace {

IntVec pt(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

PointConfiguration square_example() {
    return {2, {pt({1, 0}), pt({0, 1}), pt({1, 1})}};
}

ParameterVector c_rat(std::initializer_list<Rat> qs) {
    return ParameterVector::from_rational(std::vector<Rat>(qs));
}

Factor fr(std::int64_t h, Rat angle, std::int64_t mult) {
    return make_factor(h, UnitScalar::from_angle(angle), mult);
}

IntMatrix rand_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int ops = 0; ops < 8; ++ops) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int k = coef(rng);
        for (std::size_t col = 0; col < n; ++col) u.at(i, col) += Int(k) * u.at(j, col);
    }
    return u;
}

// random configuration generating Z^n, by rejection
PointConfiguration rand_config(std::mt19937& rng, std::size_t n, std::size_t npts, int span) {
    std::uniform_int_distribution<int> d(-span, span);
    for (;;) {
        PointConfiguration a;
        a.n = n;
        for (std::size_t i = 0; i < npts; ++i) {
            IntVec p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = d(rng);
            a.points.push_back(std::move(p));
        }
        if (validate_configuration(a).pass) return a;
    }
}

ParameterVector rand_nonresonant_c(std::mt19937& rng, const PointConfiguration& a) {
    std::uniform_int_distribution<int> num(0, 10), den(1, 11);
    for (;;) {
        std::vector<Rat> qs;
        for (std::size_t i = 0; i < a.n; ++i) {
            Rat q(num(rng), den(rng));
            q.canonicalize();
            qs.push_back(q);
        }
        ParameterVector c = ParameterVector::from_rational(qs);
        if (check_nonresonance(a, c).status == ResonanceStatus::NonResonant) return c;
    }
}

}  // namespace

TEST_SUITE("monodromy_engine") {

TEST_CASE("validate_configuration examples") {
    ValidationReport r1 = validate_configuration(square_example());
    CHECK(r1.pass);
    REQUIRE(r1.snf_divisors.size() == 2);
    CHECK(r1.snf_divisors[0] == 1);
    CHECK(r1.snf_divisors[1] == 1);

    ValidationReport r2 = validate_configuration({1, {pt({2})}});
    CHECK_FALSE(r2.pass);
    CHECK(r2.snf_divisors[0] == 2);
    CHECK(r2.message == "A does not generate Z^n (divisors: [2])");

    ValidationReport r3 = validate_configuration({2, {pt({1, 0}), pt({2, 0})}});
    CHECK_FALSE(r3.pass);
    CHECK(r3.delta_dim == 1);
}

TEST_CASE("check_nonresonance on the square example") {
    PointConfiguration a = square_example();
    ResonanceReport ok = check_nonresonance(a, c_rat({Rat(1, 3), Rat(1, 5)}));
    CHECK(ok.status == ResonanceStatus::NonResonant);
    REQUIRE(ok.checks.size() == 2);  // the two axis edges through 0

    ResonanceReport bad = check_nonresonance(a, c_rat({Rat(1), Rat(1, 2)}));
    CHECK(bad.status == ResonanceStatus::Resonant);
    REQUIRE(bad.witness.has_value());
    const auto& w = bad.checks[*bad.witness];
    CHECK(w.rho == pt({1, 0}));
    std::vector<IntVec> wf = w.facet_vertices;
    std::sort(wf.begin(), wf.end());
    CHECK(wf == std::vector<IntVec>{pt({0, 0}), pt({0, 1})});
}

TEST_CASE("check_nonresonance n=1 and float mode bands") {
    PointConfiguration a{1, {pt({1})}};
    CHECK(check_nonresonance(a, c_rat({Rat(1, 2)})).status == ResonanceStatus::NonResonant);
    CHECK(check_nonresonance(a, c_rat({Rat(3)})).status == ResonanceStatus::Resonant);

    auto cf = [&](double x) { return ParameterVector::from_complex({cd(x, 0.0)}); };
    CHECK(check_nonresonance(a, cf(0.333333333)).status == ResonanceStatus::NonResonant);
    CHECK(check_nonresonance(a, cf(1e-10)).status == ResonanceStatus::Resonant);
    CHECK(check_nonresonance(a, cf(1e-8)).status == ResonanceStatus::NonResonantNearInteger);
    CHECK(check_nonresonance(a, cf(1e-5)).status == ResonanceStatus::NonResonant);
}

TEST_CASE("relevant_facet_data on the square example") {
    PointConfiguration a = square_example();
    SUBCASE("j0 = 3: two contributions") {
        auto data = relevant_facet_data(a, 3);
        REQUIRE(data.size() == 2);
        for (const FacetContribution& fc : data) {
            CHECK(fc.vol_delta_hat == 1);
            REQUIRE(fc.gammas.size() == 1);
            CHECK(fc.gammas[0].height == 1);
            CHECK(fc.gammas[0].vol_gamma_hat == 1);
        }
        std::set<IntVec> rhos{data[0].gammas[0].rho, data[1].gammas[0].rho};
        CHECK(rhos == std::set<IntVec>{pt({0, 1}), pt({1, 0})});
    }
    SUBCASE("j0 = 1: one contribution via the diagonal") {
        auto data = relevant_facet_data(a, 1);
        REQUIRE(data.size() == 1);
        const FacetContribution& fc = data[0];
        std::vector<IntVec> dp = fc.delta_points;
        std::sort(dp.begin(), dp.end());
        CHECK(dp == std::vector<IntVec>{pt({1, 0}), pt({1, 1})});
        REQUIRE(fc.gammas.size() == 1);
        const GammaContribution& g = fc.gammas[0];
        CHECK(g.gamma_points == std::vector<IntVec>{pt({1, 1})});
        CHECK(g.rho == pt({1, -1}));
        CHECK(g.height == 1);
        CHECK(g.vol_gamma_hat == 1);
        CHECK(fc.vol_delta_hat == 1);
    }
}

TEST_CASE("relevant_facet_data: interior point yields nothing") {
    PointConfiguration a{2, {pt({3, 0}), pt({0, 3}), pt({1, 1})}};
    CHECK(relevant_facet_data(a, 3).empty());
}

TEST_CASE("relevant_facet_data errors") {
    CHECK_THROWS_AS(relevant_facet_data(square_example(), 0), std::invalid_argument);
    CHECK_THROWS_AS(relevant_facet_data(square_example(), 4), std::invalid_argument);
    // degenerate span: conv(A ∪ {0}) not full-dimensional
    CHECK_THROWS_AS(relevant_facet_data({2, {pt({1, 0}), pt({2, 0})}}, 1),
                    std::invalid_argument);
}

TEST_CASE("non-generating A computes but is flagged") {
    // {2} spans an index-2 sublattice of Z; the formula still evaluates
    PointConfiguration a{1, {pt({2})}};
    MonodromyReport r = monodromy_at_infinity(a, c_rat({Rat(1, 3)}), 1);
    CHECK(r.degree == 2);
    CHECK_FALSE(r.lattice_generated);
    CHECK_FALSE(r.theorem_hypotheses_met);
}

TEST_CASE("monodromy_at_infinity: Kummer-type square example") {
    PointConfiguration a = square_example();
    ParameterVector c = c_rat({Rat(1, 3), Rat(1, 5)});
    SUBCASE("j0 = 3") {
        MonodromyReport r = monodromy_at_infinity(a, c, 3);
        CHECK(r.degree == 2);
        CHECK(r.t_minus_one_exponent == 0);
        CHECK(r.char_poly ==
              product({fr(1, Rat(-1, 3), 1), fr(1, Rat(-1, 5), 1)}));
        CHECK(r.theorem_hypotheses_met);
    }
    SUBCASE("j0 = 1") {
        MonodromyReport r = monodromy_at_infinity(a, c, 1);
        CHECK(r.char_poly == product({fr(1, Rat(-2, 15), 1), fr(1, Rat(0), 1)}));
        CHECK(r.t_minus_one_exponent == 1);
    }
}

TEST_CASE("monodromy_at_infinity: interior case is (t-1)^9") {
    PointConfiguration a{2, {pt({3, 0}), pt({0, 3}), pt({1, 1})}};
    MonodromyReport r = monodromy_at_infinity(a, c_rat({Rat(1, 3), Rat(1, 5)}), 3);
    CHECK(r.degree == 9);
    CHECK(r.char_poly == product({fr(1, Rat(0), 9)}));
}

TEST_CASE("monodromy_at_infinity: n=1 closed forms") {
    SUBCASE("A = {1}, c = 1/2 gives t + 1") {
        PointConfiguration a{1, {pt({1})}};
        MonodromyReport r = monodromy_at_infinity(a, c_rat({Rat(1, 2)}), 1);
        CHECK(r.char_poly == product({fr(1, Rat(1, 2), 1)}));  // t - e(-1/2) = t + 1
    }
    SUBCASE("A = {1,2}, c = 1/3, j0 = 2 gives t^2 - e(-1/3)") {
        PointConfiguration a{1, {pt({1}), pt({2})}};
        MonodromyReport r = monodromy_at_infinity(a, c_rat({Rat(1, 3)}), 2);
        CHECK(r.char_poly == product({fr(2, Rat(-1, 3), 1)}));
        REQUIRE(r.contributions.size() == 1);
        REQUIRE(r.contributions[0].gammas.size() == 1);
        CHECK(r.contributions[0].gammas[0].rho == pt({1}));
        CHECK(r.contributions[0].gammas[0].height == 2);
        CHECK(r.contributions[0].gammas[0].gamma_points.empty());  // the empty face
    }
}

TEST_CASE("monodromy_at_infinity: resonant c still computes, flagged") {
    PointConfiguration a = square_example();
    MonodromyReport r = monodromy_at_infinity(a, c_rat({Rat(1), Rat(1, 2)}), 3);
    CHECK_FALSE(r.theorem_hypotheses_met);
    CHECK(r.resonance.status == ResonanceStatus::Resonant);
    CHECK(r.degree == 2);
    CHECK(r.char_poly.degree() == 2);
}

TEST_CASE("orientation flag conjugates the multipliers") {
    PointConfiguration a = square_example();
    ParameterVector c = c_rat({Rat(1, 3), Rat(1, 5)});
    MonodromyReport ccw = monodromy_at_infinity(a, c, 3, LoopOrientation::Ccw);
    MonodromyReport cw = monodromy_at_infinity(a, c, 3, LoopOrientation::Cw);
    REQUIRE(ccw.char_poly.factors.size() == cw.char_poly.factors.size());
    std::vector<Factor> conj;
    for (const Factor& f : ccw.char_poly.factors)
        conj.push_back(make_factor(f.h, UnitScalar::from_angle(Rat(-1) * f.mu.q), f.mult));
    CHECK(product(conj) == cw.char_poly);
}

TEST_CASE("degree identity and pyramid bookkeeping on random configurations") {
    std::mt19937 rng(606);
    std::uniform_int_distribution<std::size_t> nd(1, 3), cnt(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = nd(rng);
        PointConfiguration a = rand_config(rng, n, std::max<std::size_t>(n, cnt(rng)), 3);
        ParameterVector c = rand_nonresonant_c(rng, a);
        for (std::size_t j0 = 1; j0 <= a.count(); ++j0) {
            MonodromyReport r = monodromy_at_infinity(a, c, j0);
            CHECK(Int(r.char_poly.degree()) == r.degree);
            CHECK(r.t_minus_one_exponent >= 0);
            for (const FacetContribution& fc : r.contributions) {
                Int sum = 0;
                for (const GammaContribution& g : fc.gammas) sum += g.height * g.vol_gamma_hat;
                CHECK(sum == fc.vol_delta_hat);
            }
        }
    }
}

TEST_CASE("unimodular equivariance of the factored output") {
    std::mt19937 rng(707);
    std::uniform_int_distribution<std::size_t> nd(1, 3), cnt(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = nd(rng);
        PointConfiguration a = rand_config(rng, n, std::max<std::size_t>(n, cnt(rng)), 2);
        ParameterVector c = rand_nonresonant_c(rng, a);
        std::uniform_int_distribution<std::size_t> pick(1, a.count());
        std::size_t j0 = pick(rng);
        MonodromyReport base = monodromy_at_infinity(a, c, j0);
        for (int rep = 0; rep < 3; ++rep) {
            IntMatrix u = rand_unimodular(rng, n);
            PointConfiguration ta;
            ta.n = n;
            for (const IntVec& p : a.points) ta.points.push_back(mul(u, p));
            std::vector<Rat> tc(n, Rat(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) tc[i] += Rat(u.at(i, k)) * c.exact[k];
            MonodromyReport got = monodromy_at_infinity(ta, ParameterVector::from_rational(tc), j0);
            CHECK(got.char_poly == base.char_poly);
        }
    }
}

TEST_CASE("ordering independence: permuting points tracks j0") {
    std::mt19937 rng(808);
    PointConfiguration a = rand_config(rng, 2, 5, 3);
    ParameterVector c = rand_nonresonant_c(rng, a);
    std::vector<std::size_t> perm{4, 2, 0, 1, 3};
    PointConfiguration b;
    b.n = a.n;
    for (std::size_t i : perm) b.points.push_back(a.points[i]);
    for (std::size_t newpos = 0; newpos < perm.size(); ++newpos) {
        MonodromyReport rb = monodromy_at_infinity(b, c, newpos + 1);
        MonodromyReport ra = monodromy_at_infinity(a, c, perm[newpos] + 1);
        CHECK(ra.char_poly == rb.char_poly);
    }
}

TEST_CASE("a(j0) = 0 gives (t-1)^Vol") {
    PointConfiguration a{2, {pt({0, 0}), pt({1, 0}), pt({0, 1})}};
    MonodromyReport r = monodromy_at_infinity(a, c_rat({Rat(1, 3), Rat(1, 7)}), 1);
    CHECK(r.contributions.empty());
    CHECK(r.char_poly == product({fr(1, Rat(0), 1)}));
}

TEST_CASE("float-mode c produces complex multipliers matching the exact ones") {
    PointConfiguration a = square_example();
    MonodromyReport exact = monodromy_at_infinity(a, c_rat({Rat(1, 3), Rat(1, 5)}), 3);
    MonodromyReport approx = monodromy_at_infinity(
        a, ParameterVector::from_complex({cd(1.0 / 3.0, 0.0), cd(0.2, 0.0)}), 3);
    REQUIRE(approx.char_poly.factors.size() == exact.char_poly.factors.size());
    SpectrumMatch m = compare_spectra(roots(exact.char_poly), roots(approx.char_poly), 1e-12);
    CHECK(m.pass);
    for (const Factor& f : approx.char_poly.factors)
        CHECK_FALSE(f.mu.is_rational());
}

TEST_CASE("phi1_matrix examples") {
    ParameterVector c = c_rat({Rat(1, 3), Rat(1, 5)});
    const double tau = 2.0 * std::numbers::pi;
    cd eps1 = std::polar(1.0, tau / 3.0);
    cd eps2 = std::polar(1.0, -tau / 5.0);
    SUBCASE("p=2, h=1, d1=1") {
        Phi1Matrices m = phi1_matrix(2, 1, 1, c);
        REQUIRE(m.L.rows() == 1);
        CHECK(std::abs(m.L(0, 0) - eps1 * eps2 * eps2) < 1e-12);
    }
    SUBCASE("p=1, h=2, d1=1: K = eps1 [[0, eps2], [1, 0]]") {
        Phi1Matrices m = phi1_matrix(1, 2, 1, c);
        REQUIRE(m.K.rows() == 2);
        CHECK(std::abs(m.K(0, 0)) < 1e-12);
        CHECK(std::abs(m.K(0, 1) - eps1 * eps2) < 1e-12);
        CHECK(std::abs(m.K(1, 0) - eps1) < 1e-12);
        CHECK(std::abs(m.K(1, 1)) < 1e-12);
        // char poly of the 2x2: t^2 - eps1^2 eps2
        // det(tI - K) = t^2 - tr(K) t + det(K); want t^2 - eps1^2 eps2
        cd det = m.K(0, 0) * m.K(1, 1) - m.K(0, 1) * m.K(1, 0);
        cd trace = m.K(0, 0) + m.K(1, 1);
        CHECK(std::abs(trace) < 1e-12);
        CHECK(std::abs(det - (-eps1 * eps1 * eps2)) < 1e-12);
    }
    SUBCASE("p=0, h=1, d1=3: companion of t^3 - eps1") {
        Phi1Matrices m = phi1_matrix(0, 1, 3, c);
        Phi1IdentityReport rep = phi1_charpoly_identity(0, 1, 3, c);
        CHECK(rep.pass);
        REQUIRE(rep.charpoly_product.size() == 4);
        CHECK(std::abs(rep.charpoly_product[1]) < 1e-12);
        CHECK(std::abs(rep.charpoly_product[2]) < 1e-12);
        CHECK(std::abs(rep.charpoly_product[3] - (-eps1)) < 1e-12);
        CHECK(m.L.rows() == 3);
    }
}

TEST_CASE("phi1_charpoly_identity examples and random sweep") {
    ParameterVector c = c_rat({Rat(2, 7), Rat(3, 11)});
    CHECK(phi1_charpoly_identity(1, 2, 1, c).pass);
    CHECK(phi1_charpoly_identity(0, 1, 3, c).pass);
    std::mt19937 rng(909);
    std::uniform_int_distribution<int> num(0, 10), den(1, 11), pd(-4, 4), hd(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        ParameterVector cc = c_rat({Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
        Phi1IdentityReport rep = phi1_charpoly_identity(pd(rng), hd(rng), hd(rng), cc);
        CHECK(rep.pass);
    }
}

TEST_CASE("phi1_charpoly_identity holds for complex float c too") {
    ParameterVector c = ParameterVector::from_complex({cd(0.3, 0.05), cd(0.7, -0.02)});
    CHECK(phi1_charpoly_identity(2, 3, 2, c).pass);
    CHECK(phi1_charpoly_identity(-2, 2, 3, c).pass);
}

TEST_CASE("phi1 matrix and index map agree over the full small range") {
    std::mt19937 rng(910);
    std::uniform_int_distribution<int> num(0, 10), den(1, 11);
    for (std::int64_t p = -5; p <= 5; ++p)
        for (std::int64_t h = 1; h <= 4; ++h)
            for (std::int64_t d1 = 1; d1 <= 4; ++d1) {
                ParameterVector cc = c_rat({Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
                // phi1_matrix throws if the two constructions disagree
                Phi1Matrices m = phi1_matrix(p, h, d1, cc);
                CHECK((m.L - m.L_from_index_map).cwiseAbs().maxCoeff() <= 1e-10);
            }
}

TEST_CASE("check_nondegeneracy on the square example") {
    PointConfiguration a = square_example();
    SUBCASE("z = (1,1,1) is nondegenerate on all checked faces") {
        NondegeneracyReport r = check_nondegeneracy(
            a, CoefficientVector::from_rational({Rat(1), Rat(1), Rat(1)}));
        CHECK(r.overall == FaceVerdict::Nondegenerate);
        for (const FaceCheck& f : r.faces) CHECK(f.verdict == FaceVerdict::Nondegenerate);
    }
    SUBCASE("z = (0,1,1) is degenerate at the vertex (1,0)") {
        NondegeneracyReport r = check_nondegeneracy(
            a, CoefficientVector::from_rational({Rat(0), Rat(1), Rat(1)}));
        CHECK(r.overall == FaceVerdict::Degenerate);
        bool found = false;
        for (const FaceCheck& f : r.faces)
            if (f.dim == 0 && f.face_points == std::vector<IntVec>{pt({1, 0})}) {
                CHECK(f.verdict == FaceVerdict::Degenerate);
                found = true;
            }
        CHECK(found);
    }
    SUBCASE("float mode agrees") {
        NondegeneracyReport r = check_nondegeneracy(
            a, CoefficientVector::from_complex({cd(1, 0), cd(1, 0), cd(1, 0)}));
        CHECK(r.overall == FaceVerdict::Nondegenerate);
    }
    SUBCASE("a repeated edge root is caught") {
        // edge x=1 of conv{0,(1,0),(1,1),(1,2)} avoids 0 and carries
        // g(s) = z1 + z2 s + z3 s^2, a double root for z = (1,2,1)
        PointConfiguration edge{2, {pt({1, 0}), pt({1, 1}), pt({1, 2})}};
        NondegeneracyReport r = check_nondegeneracy(
            edge, CoefficientVector::from_rational({Rat(1), Rat(2), Rat(1)}));
        CHECK(r.overall == FaceVerdict::Degenerate);
        NondegeneracyReport r2 = check_nondegeneracy(
            edge, CoefficientVector::from_complex({cd(1, 0), cd(2, 0), cd(1, 0)}));
        CHECK(r2.overall == FaceVerdict::Degenerate);
        NondegeneracyReport r3 = check_nondegeneracy(
            edge, CoefficientVector::from_rational({Rat(1), Rat(3), Rat(1)}));
        CHECK(r3.overall == FaceVerdict::Nondegenerate);
    }
}

TEST_CASE("check_nondegeneracy A={1,2} with z=(2,1)") {
    PointConfiguration a{1, {pt({1}), pt({2})}};
    NondegeneracyReport r =
        check_nondegeneracy(a, CoefficientVector::from_rational({Rat(2), Rat(1)}));
    CHECK(r.overall == FaceVerdict::Nondegenerate);
    REQUIRE(r.faces.size() == 1);  // only the vertex face {2}
    CHECK(r.faces[0].face_points == std::vector<IntVec>{pt({2})});
}

TEST_CASE("check_nondegeneracy reports dim >= 2 faces unchecked") {
    // 3-dimensional configuration with a 2-face avoiding the origin
    PointConfiguration a{
        3, {pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 1, 1})}};
    std::vector<Rat> z(4, Rat(1));
    NondegeneracyReport r = check_nondegeneracy(a, CoefficientVector::from_rational(z));
    bool has_unchecked = false;
    for (const FaceCheck& f : r.faces)
        if (f.verdict == FaceVerdict::Unchecked) {
            CHECK(f.dim >= 2);
            has_unchecked = true;
        }
    CHECK(has_unchecked);
    CHECK(r.overall == FaceVerdict::Unchecked);
}

TEST_CASE("check_nondegeneracy wrong z length throws") {
    CHECK_THROWS_AS(
        check_nondegeneracy(square_example(), CoefficientVector::from_rational({Rat(1)})),
        std::invalid_argument);
}

}  // TEST_SUITE
