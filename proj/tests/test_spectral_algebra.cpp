#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "ahg/spectral_algebra.hpp"

using namespace ahg;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cd e_of(double turns) { return std::polar(1.0, kTwoPi * turns); }

FactoredCharPoly rand_poly(std::mt19937& rng, int max_factors) {
    std::uniform_int_distribution<int> nf(1, max_factors), hh(1, 4), mm(1, 3), num(0, 10),
        den(1, 11);
    std::vector<Factor> fs;
    int count = nf(rng);
    for (int i = 0; i < count; ++i)
        fs.push_back(make_factor(hh(rng), UnitScalar::from_angle(Rat(num(rng), den(rng))),
                                 mm(rng)));
    return product(fs);
}

}  // namespace

TEST_SUITE("spectral_algebra") {

TEST_CASE("make_factor basics and errors") {
    Factor f = make_factor(1, UnitScalar::from_angle(Rat(0)), 3);
    CHECK(f.h == 1);
    CHECK(f.mult == 3);
    Factor g = make_factor(2, UnitScalar::from_angle(Rat(2, 3)), 1);
    CHECK(g.mu.q == Rat(2, 3));
    Factor h = make_factor(1, UnitScalar::from_complex(cd(-1.0, 0.0)), 1);
    CHECK(h.mu.value() == cd(-1.0, 0.0));
    CHECK_THROWS_AS(make_factor(0, UnitScalar::from_angle(Rat(0)), 1), std::invalid_argument);
    CHECK_THROWS_AS(make_factor(1, UnitScalar::from_angle(Rat(0)), 0), std::invalid_argument);
}

TEST_CASE("angles are reduced mod 1") {
    CHECK(UnitScalar::from_angle(Rat(-1, 3)).q == Rat(2, 3));
    CHECK(UnitScalar::from_angle(Rat(7, 3)).q == Rat(1, 3));
    CHECK(UnitScalar::from_angle(Rat(-1, 3)).principal_q() == Rat(-1, 3));
    CHECK(UnitScalar::from_angle(Rat(1, 2)).principal_q() == Rat(1, 2));
}

TEST_CASE("product merges equal factors") {
    UnitScalar one = UnitScalar::from_angle(Rat(0));
    FactoredCharPoly p = product({make_factor(1, one, 1), make_factor(1, one, 2)});
    REQUIRE(p.factors.size() == 1);
    CHECK(p.factors[0].mult == 3);
    CHECK(p.degree() == 3);
}

TEST_CASE("product is deterministic under input order") {
    UnitScalar mu = UnitScalar::from_angle(Rat(1, 3));
    UnitScalar nu = UnitScalar::from_angle(Rat(1, 5));
    std::vector<Factor> a{make_factor(2, mu, 1), make_factor(1, nu, 2), make_factor(2, nu, 1)};
    std::vector<Factor> b{a[2], a[0], a[1]};
    CHECK(product(a) == product(b));
}

TEST_CASE("factors with equal h, distinct mu stay separate, angle-sorted") {
    UnitScalar mu = UnitScalar::from_angle(Rat(2, 3));
    UnitScalar nu = UnitScalar::from_angle(Rat(1, 3));
    FactoredCharPoly p = product({make_factor(2, mu, 1), make_factor(2, nu, 1)});
    REQUIRE(p.factors.size() == 2);
    CHECK(p.factors[0].mu.q == Rat(1, 3));
    CHECK(p.factors[1].mu.q == Rat(2, 3));
}

TEST_CASE("expand (t-1)^2") {
    FactoredCharPoly p = product({make_factor(1, UnitScalar::from_angle(Rat(0)), 2)});
    auto c = expand(p);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0] - cd(1, 0)) < 1e-15);
    CHECK(std::abs(c[1] - cd(-2, 0)) < 1e-15);
    CHECK(std::abs(c[2] - cd(1, 0)) < 1e-15);
}

TEST_CASE("expand t^2 - mu with mu = e^{-2 pi i / 2} = -1") {
    FactoredCharPoly p = product({make_factor(2, UnitScalar::from_angle(Rat(-1, 2)), 1)});
    auto c = expand(p);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0] - cd(1, 0)) < 1e-15);
    CHECK(std::abs(c[1]) < 1e-15);
    CHECK(std::abs(c[2] - cd(1, 0)) < 1e-15);
}

TEST_CASE("expand two linear factors against the direct float product") {
    FactoredCharPoly p = product({make_factor(1, UnitScalar::from_angle(Rat(-1, 3)), 1),
                                  make_factor(1, UnitScalar::from_angle(Rat(-1, 5)), 1)});
    auto c = expand(p);
    // direct float multiplication (t - a)(t - b)
    cd a = e_of(-1.0 / 3.0), b = e_of(-1.0 / 5.0);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0] - cd(1, 0)) < 1e-14);
    CHECK(std::abs(c[1] - (-(a + b))) < 1e-14);
    CHECK(std::abs(c[2] - a * b) < 1e-14);
    // constant term has angle -(1/3 + 1/5)
    CHECK(std::abs(c[2] - e_of(-(1.0 / 3.0 + 1.0 / 5.0))) < 1e-14);
}

TEST_CASE("roots of t^2 - e^{-2 pi i q}") {
    Rat q(1, 3);
    FactoredCharPoly p = product({make_factor(2, UnitScalar::from_angle(-q), 1)});
    SpectrumMultiset s = roots(p);
    REQUIRE(s.entries.size() == 2);
    // the roots are the angles (-q + k)/2 mod 1 for k = 0, 1, as a set
    std::set<Rat> got{s.entries[0].value.q, s.entries[1].value.q};
    std::set<Rat> want{reduce_mod1((-q + Rat(0)) / Rat(2)), reduce_mod1((-q + Rat(1)) / Rat(2))};
    CHECK(got == want);
}

TEST_CASE("roots of (t-1)^3 and of a product of linear factors") {
    FactoredCharPoly p = product({make_factor(1, UnitScalar::from_angle(Rat(0)), 3)});
    SpectrumMultiset s = roots(p);
    REQUIRE(s.entries.size() == 1);
    CHECK(s.entries[0].value.q == 0);
    CHECK(s.entries[0].mult == 3);

    FactoredCharPoly two = product({make_factor(1, UnitScalar::from_angle(Rat(1, 3)), 1),
                                    make_factor(1, UnitScalar::from_angle(Rat(1, 5)), 1)});
    CHECK(roots(two).total() == 2);
    CHECK(roots(two).entries.size() == 2);
}

TEST_CASE("compare_spectra trivial and perturbed") {
    std::mt19937 rng(9);
    FactoredCharPoly p = rand_poly(rng, 3);
    SpectrumMultiset s = roots(p);
    SpectrumMatch m = compare_spectra(s, s, 1e-6);
    CHECK(m.pass);
    CHECK(m.max_distance == 0.0);

    // perturb one eigenvalue by 1e-8
    SpectrumMultiset t;
    bool bumped = false;
    for (const SpectrumEntry& e : s.entries) {
        cd v = e.value.value();
        if (!bumped) {
            v *= std::polar(1.0, 1e-8);
            bumped = true;
        }
        for (std::int64_t k = 0; k < e.mult; ++k)
            t.entries.push_back({UnitScalar::from_complex(v), 1});
    }
    SpectrumMatch m2 = compare_spectra(s, t, 1e-6);
    CHECK(m2.pass);
    CHECK(m2.max_distance > 0.0);
    CHECK(m2.max_distance < 1e-7);
}

TEST_CASE("compare_spectra failures") {
    SpectrumMultiset a, b;
    a.entries.push_back({UnitScalar::from_angle(Rat(0)), 2});
    b.entries.push_back({UnitScalar::from_angle(Rat(0)), 1});
    b.entries.push_back({UnitScalar::from_angle(Rat(1, 2)), 1});
    SpectrumMatch m = compare_spectra(a, b, 1e-6);
    CHECK_FALSE(m.pass);
    CHECK(m.max_distance > 1.0);  // witness pair 1 vs -1

    SpectrumMultiset c;
    c.entries.push_back({UnitScalar::from_angle(Rat(0)), 1});
    SpectrumMatch m2 = compare_spectra(a, c, 1e-6);
    CHECK_FALSE(m2.pass);
    CHECK(m2.cardinality_mismatch);
    CHECK(m2.count_a == 2);
    CHECK(m2.count_b == 1);
}

TEST_CASE("degree conservation and unit-circle roots on random polys") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        FactoredCharPoly p = rand_poly(rng, 4);
        auto c = expand(p);
        CHECK(static_cast<std::int64_t>(c.size()) == p.degree() + 1);
        CHECK(c[0] == cd(1.0, 0.0));  // exactly monic
        SpectrumMultiset s = roots(p);
        CHECK(s.total() == p.degree());
        for (const SpectrumEntry& e : s.entries) CHECK(e.value.unit_defect() <= 1e-9);
    }
}

TEST_CASE("expand of a union is the convolution of expands") {
    std::mt19937 rng(78);
    for (int trial = 0; trial < 50; ++trial) {
        FactoredCharPoly p1 = rand_poly(rng, 3);
        FactoredCharPoly p2 = rand_poly(rng, 3);
        std::vector<Factor> all = p1.factors;
        all.insert(all.end(), p2.factors.begin(), p2.factors.end());
        auto joint = expand(product(all));
        auto a = expand(p1), b = expand(p2);
        std::vector<cd> conv(a.size() + b.size() - 1, cd(0, 0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) conv[i + j] += a[i] * b[j];
        REQUIRE(joint.size() == conv.size());
        for (std::size_t i = 0; i < conv.size(); ++i) CHECK(std::abs(joint[i] - conv[i]) < 1e-10);
    }
}

TEST_CASE("roots/expand consistency") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 50; ++trial) {
        FactoredCharPoly p = rand_poly(rng, 3);
        auto c = expand(p);
        SpectrumMultiset s = roots(p);
        for (const SpectrumEntry& e : s.entries)
            CHECK(std::abs(eval_poly(c, e.value.value())) <=
                  1e-8 * static_cast<double>(p.degree()));
    }
}

TEST_CASE("unit scalar display form") {
    CHECK(unit_scalar_to_string(UnitScalar::from_angle(Rat(0))) == "1");
    CHECK(unit_scalar_to_string(UnitScalar::from_angle(Rat(1, 2))) == "-1");
    CHECK(unit_scalar_to_string(UnitScalar::from_angle(Rat(2, 3))) == "e(-1/3)");
    CHECK(unit_scalar_to_string(UnitScalar::from_angle(Rat(1, 5))) == "e(1/5)");
}

}  // TEST_SUITE
