#include "ahg/spectral_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ahg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Rat reduce_mod1(Rat q) {
    q.canonicalize();
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    Rat r = q - Rat(fl);
    r.canonicalize();
    return r;
}

UnitScalar UnitScalar::from_angle(const Rat& angle) {
    UnitScalar u;
    u.kind = Kind::RationalAngle;
    u.q = reduce_mod1(angle);
    return u;
}

UnitScalar UnitScalar::from_complex(cd value) {
    UnitScalar u;
    u.kind = Kind::ComplexFloat;
    u.z = value;
    return u;
}

cd UnitScalar::value() const {
    if (kind == Kind::RationalAngle) {
        double t = kTwoPi * rat_to_double(q);
        return {std::cos(t), std::sin(t)};
    }
    return z;
}

double UnitScalar::unit_defect() const { return std::abs(std::abs(value()) - 1.0); }

Rat UnitScalar::principal_q() const {
    if (kind != Kind::RationalAngle)
        throw std::logic_error("principal_q: not a rational angle");
    return (q > Rat(1, 2)) ? Rat(q - 1) : q;
}

double UnitScalar::principal_turns() const {
    if (kind == Kind::RationalAngle) return rat_to_double(principal_q());
    double t = std::arg(z) / kTwoPi;  // in (-1/2, 1/2]
    return t;
}

bool UnitScalar::operator==(const UnitScalar& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::RationalAngle) return q == o.q;
    return z == o.z;
}

bool UnitScalar::operator<(const UnitScalar& o) const {
    if (kind != o.kind) return kind == Kind::RationalAngle;  // rationals first
    if (kind == Kind::RationalAngle) return q < o.q;
    double a = principal_turns(), b = o.principal_turns();
    if (a != b) return a < b;
    if (z.real() != o.z.real()) return z.real() < o.z.real();
    return z.imag() < o.z.imag();
}

Factor make_factor(std::int64_t h, const UnitScalar& mu, std::int64_t mult) {
    if (h < 1) throw std::invalid_argument("make_factor: h must be >= 1");
    if (mult < 1) throw std::invalid_argument("make_factor: mult must be >= 1");
    return Factor{h, mu, mult};
}

std::int64_t FactoredCharPoly::degree() const {
    std::int64_t d = 0;
    for (const Factor& f : factors) d += f.h * f.mult;
    return d;
}

FactoredCharPoly product(const std::vector<Factor>& factors) {
    std::vector<Factor> work;
    for (const Factor& f : factors) {
        if (f.h < 1 || f.mult < 1) throw std::invalid_argument("product: malformed factor");
        work.push_back(f);
    }
    std::sort(work.begin(), work.end(), [](const Factor& a, const Factor& b) {
        if (a.h != b.h) return a.h < b.h;
        if (!(a.mu == b.mu)) return a.mu < b.mu;
        return false;
    });
    FactoredCharPoly out;
    for (Factor& f : work) {
        if (!out.factors.empty() && out.factors.back().h == f.h &&
            out.factors.back().mu == f.mu) {
            out.factors.back().mult += f.mult;
        } else {
            out.factors.push_back(std::move(f));
        }
    }
    return out;
}

std::vector<cd> expand(const FactoredCharPoly& p) {
    std::vector<cd> coeffs{cd(1.0, 0.0)};
    for (const Factor& f : p.factors) {
        // base = t^h - mu, leading first
        std::vector<cd> base(static_cast<std::size_t>(f.h) + 1, cd(0.0, 0.0));
        base.front() = cd(1.0, 0.0);
        base.back() = -f.mu.value();
        for (std::int64_t k = 0; k < f.mult; ++k) {
            std::vector<cd> next(coeffs.size() + base.size() - 1, cd(0.0, 0.0));
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += coeffs[i] * base[j];
            coeffs = std::move(next);
        }
    }
    return coeffs;
}

std::int64_t SpectrumMultiset::total() const {
    std::int64_t t = 0;
    for (const SpectrumEntry& e : entries) t += e.mult;
    return t;
}

SpectrumMultiset roots(const FactoredCharPoly& p) {
    std::vector<SpectrumEntry> entries;
    for (const Factor& f : p.factors) {
        if (f.mu.is_rational()) {
            for (std::int64_t k = 0; k < f.h; ++k)
                entries.push_back({UnitScalar::from_angle((f.mu.q + Rat(k)) / Rat(f.h)), f.mult});
        } else {
            double r = std::pow(std::abs(f.mu.z), 1.0 / static_cast<double>(f.h));
            double base = std::arg(f.mu.z);
            for (std::int64_t k = 0; k < f.h; ++k) {
                double t = (base + kTwoPi * static_cast<double>(k)) / static_cast<double>(f.h);
                entries.push_back(
                    {UnitScalar::from_complex(cd(r * std::cos(t), r * std::sin(t))), f.mult});
            }
        }
    }
    // merge equal values
    std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.value < b.value;
    });
    SpectrumMultiset out;
    for (SpectrumEntry& e : entries) {
        if (!out.entries.empty() && out.entries.back().value == e.value)
            out.entries.back().mult += e.mult;
        else
            out.entries.push_back(std::move(e));
    }
    return out;
}

namespace {

std::vector<cd> flatten(const SpectrumMultiset& s) {
    std::vector<cd> v;
    for (const SpectrumEntry& e : s.entries)
        for (std::int64_t k = 0; k < e.mult; ++k) v.push_back(e.value.value());
    std::sort(v.begin(), v.end(), [](cd a, cd b) {
        double aa = std::arg(a), ab = std::arg(b);
        if (aa != ab) return aa < ab;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

}  // namespace

SpectrumMatch compare_spectra(const SpectrumMultiset& a, const SpectrumMultiset& b,
                              double tol) {
    SpectrumMatch m;
    std::vector<cd> va = flatten(a), vb = flatten(b);
    m.count_a = va.size();
    m.count_b = vb.size();
    if (va.size() != vb.size()) {
        m.cardinality_mismatch = true;
        return m;
    }
    if (va.empty()) {
        m.pass = true;
        return m;
    }
    const std::size_t n = va.size();
    double best = -1.0;
    std::size_t best_off = 0, best_i = 0;
    for (std::size_t off = 0; off < n; ++off) {
        double worst = 0.0;
        std::size_t wi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double dd = std::abs(va[i] - vb[(i + off) % n]);
            if (dd > worst) {
                worst = dd;
                wi = i;
            }
        }
        if (best < 0 || worst < best) {
            best = worst;
            best_off = off;
            best_i = wi;
        }
    }
    m.max_distance = best;
    m.witness_a = va[best_i];
    m.witness_b = vb[(best_i + best_off) % n];
    m.pass = best <= tol;
    return m;
}

cd eval_poly(const std::vector<cd>& coeffs, cd t) {
    cd acc(0.0, 0.0);
    for (const cd& c : coeffs) acc = acc * t + c;
    return acc;
}

std::string unit_scalar_to_string(const UnitScalar& u) {
    if (u.is_rational()) {
        Rat p = u.principal_q();
        if (p == 0) return "1";
        if (p == Rat(1, 2)) return "-1";
        std::ostringstream os;
        os << "e(" << p.get_str() << ")";
        return os.str();
    }
    std::ostringstream os;
    os << "(" << u.z.real() << (u.z.imag() < 0 ? "" : "+") << u.z.imag() << "i)";
    return os.str();
}

}  // namespace ahg
