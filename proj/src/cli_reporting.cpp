#include "ahg/cli_reporting.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ahg {

namespace {

using ojson = nlohmann::ordered_json;

std::int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer out of machine range");
    return v.get_si();
}

Rat parse_rational(const std::string& s, const std::string& ptr) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw ConfigError(ptr, "not a rational \"p/q\": '" + s + "'");
    if (q.get_den() == 0) throw ConfigError(ptr, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// ---------- serialization helpers ----------

ojson vec_json(const IntVec& v) {
    ojson a = ojson::array();
    for (const Int& x : v) a.push_back(to_i64(x));
    return a;
}

ojson points_json(const std::vector<IntVec>& pts) {
    ojson a = ojson::array();
    for (const IntVec& p : pts) a.push_back(vec_json(p));
    return a;
}

IntVec vec_from_json(const ojson& j) {
    IntVec v;
    for (const auto& x : j) v.push_back(Int(x.get<std::int64_t>()));
    return v;
}

std::vector<IntVec> points_from_json(const ojson& j) {
    std::vector<IntVec> pts;
    for (const auto& p : j) pts.push_back(vec_from_json(p));
    return pts;
}

ojson unit_scalar_json(const UnitScalar& u) {
    ojson j;
    if (u.is_rational()) {
        j["kind"] = "rational_angle";
        j["q"] = u.principal_q().get_str();
    } else {
        j["kind"] = "complex";
        j["re"] = u.z.real();
        j["im"] = u.z.imag();
    }
    return j;
}

UnitScalar unit_scalar_from_json(const ojson& j) {
    if (j.at("kind") == "rational_angle")
        return UnitScalar::from_angle(parse_rational(j.at("q").get<std::string>(), ""));
    return UnitScalar::from_complex(cd(j.at("re").get<double>(), j.at("im").get<double>()));
}

ojson spectrum_json(const SpectrumMultiset& s) {
    ojson a = ojson::array();
    for (const SpectrumEntry& e : s.entries) {
        ojson t;
        t["value"] = unit_scalar_json(e.value);
        t["mult"] = e.mult;
        a.push_back(std::move(t));
    }
    return a;
}

SpectrumMultiset spectrum_from_json(const ojson& j) {
    SpectrumMultiset s;
    for (const auto& e : j)
        s.entries.push_back({unit_scalar_from_json(e.at("value")), e.at("mult").get<std::int64_t>()});
    return s;
}

const char* status_name(ResonanceStatus s) {
    switch (s) {
        case ResonanceStatus::NonResonant: return "non_resonant";
        case ResonanceStatus::NonResonantNearInteger: return "near_integer_warning";
        case ResonanceStatus::Resonant: return "resonant";
    }
    return "?";
}

ResonanceStatus status_from_name(const std::string& s) {
    if (s == "non_resonant") return ResonanceStatus::NonResonant;
    if (s == "near_integer_warning") return ResonanceStatus::NonResonantNearInteger;
    if (s == "resonant") return ResonanceStatus::Resonant;
    throw ConfigError("", "unknown resonance status '" + s + "'");
}

const char* verdict_name(FaceVerdict v) {
    switch (v) {
        case FaceVerdict::Nondegenerate: return "nondegenerate";
        case FaceVerdict::Degenerate: return "degenerate";
        case FaceVerdict::Unchecked: return "unchecked";
    }
    return "?";
}

FaceVerdict verdict_from_name(const std::string& s) {
    if (s == "nondegenerate") return FaceVerdict::Nondegenerate;
    if (s == "degenerate") return FaceVerdict::Degenerate;
    if (s == "unchecked") return FaceVerdict::Unchecked;
    throw ConfigError("", "unknown verdict '" + s + "'");
}

ojson resonance_json(const ResonanceReport& r) {
    ojson j;
    j["status"] = status_name(r.status);
    ojson checks = ojson::array();
    for (const ResonanceFacetCheck& c : r.checks) {
        ojson cj;
        cj["facet"] = points_json(c.facet_vertices);
        cj["rho"] = vec_json(c.rho);
        if (c.pairing_exact) {
            cj["pairing"] = c.pairing_exact->get_str();
        } else {
            cj["pairing"] = ojson{{"re", c.pairing_float.real()}, {"im", c.pairing_float.imag()}};
            cj["distance_to_integer"] = c.distance_to_integer;
        }
        cj["integral"] = c.integral;
        cj["warning"] = c.warning;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    if (r.witness) j["witness_index"] = *r.witness;
    return j;
}

ResonanceReport resonance_from_json(const ojson& j) {
    ResonanceReport r;
    r.status = status_from_name(j.at("status").get<std::string>());
    for (const auto& cj : j.at("checks")) {
        ResonanceFacetCheck c;
        c.facet_vertices = points_from_json(cj.at("facet"));
        c.rho = vec_from_json(cj.at("rho"));
        if (cj.at("pairing").is_string()) {
            c.pairing_exact = parse_rational(cj.at("pairing").get<std::string>(), "");
        } else {
            c.pairing_float = cd(cj.at("pairing").at("re").get<double>(),
                                 cj.at("pairing").at("im").get<double>());
            c.distance_to_integer = cj.at("distance_to_integer").get<double>();
        }
        c.integral = cj.at("integral").get<bool>();
        c.warning = cj.at("warning").get<bool>();
        r.checks.push_back(std::move(c));
    }
    if (j.contains("witness_index")) r.witness = j.at("witness_index").get<std::size_t>();
    return r;
}

ojson report_json(const MonodromyReport& r) {
    ojson j;
    j["j0"] = r.j0;
    j["degree"] = to_i64(r.degree);
    ojson factors = ojson::array();
    for (const Factor& f : r.char_poly.factors) {
        ojson fj;
        fj["h"] = f.h;
        fj["mu"] = unit_scalar_json(f.mu);
        fj["mult"] = f.mult;
        factors.push_back(std::move(fj));
    }
    j["factors"] = std::move(factors);
    j["t_minus_one_exponent"] = to_i64(r.t_minus_one_exponent);
    ojson contributions = ojson::array();
    for (const FacetContribution& fc : r.contributions) {
        ojson cj;
        cj["delta"] = points_json(fc.delta_points);
        cj["vol_delta_hat"] = to_i64(fc.vol_delta_hat);
        ojson gammas = ojson::array();
        for (const GammaContribution& g : fc.gammas) {
            ojson gj;
            gj["gamma"] = points_json(g.gamma_points);
            gj["rho"] = vec_json(g.rho);
            gj["h"] = to_i64(g.height);
            gj["vol_gamma_hat"] = to_i64(g.vol_gamma_hat);
            gammas.push_back(std::move(gj));
        }
        cj["gammas"] = std::move(gammas);
        contributions.push_back(std::move(cj));
    }
    j["contributions"] = std::move(contributions);
    j["resonance"] = resonance_json(r.resonance);
    j["lattice_generated"] = r.lattice_generated;
    j["theorem_hypotheses_met"] = r.theorem_hypotheses_met;
    return j;
}

MonodromyReport report_from_json(const ojson& j, LoopOrientation orientation) {
    MonodromyReport r;
    r.j0 = j.at("j0").get<std::size_t>();
    r.orientation = orientation;
    r.degree = Int(j.at("degree").get<std::int64_t>());
    std::vector<Factor> factors;
    for (const auto& fj : j.at("factors"))
        factors.push_back(make_factor(fj.at("h").get<std::int64_t>(),
                                      unit_scalar_from_json(fj.at("mu")),
                                      fj.at("mult").get<std::int64_t>()));
    r.char_poly = product(factors);
    r.t_minus_one_exponent = Int(j.at("t_minus_one_exponent").get<std::int64_t>());
    for (const auto& cj : j.at("contributions")) {
        FacetContribution fc;
        fc.delta_points = points_from_json(cj.at("delta"));
        fc.vol_delta_hat = Int(cj.at("vol_delta_hat").get<std::int64_t>());
        for (const auto& gj : cj.at("gammas")) {
            GammaContribution g;
            g.gamma_points = points_from_json(gj.at("gamma"));
            g.rho = vec_from_json(gj.at("rho"));
            g.height = Int(gj.at("h").get<std::int64_t>());
            g.vol_gamma_hat = Int(gj.at("vol_gamma_hat").get<std::int64_t>());
            fc.gammas.push_back(std::move(g));
        }
        r.contributions.push_back(std::move(fc));
    }
    r.resonance = resonance_from_json(j.at("resonance"));
    r.lattice_generated = j.at("lattice_generated").get<bool>();
    r.theorem_hypotheses_met = j.at("theorem_hypotheses_met").get<bool>();
    return r;
}

ojson echo_config(const JobConfig& c) {
    ojson j;
    j["A"] = points_json(c.A.points);
    ojson cv = ojson::array();
    if (c.c.mode == ParamMode::Exact) {
        for (const Rat& q : c.c.exact) cv.push_back(q.get_str());
    } else {
        for (const cd& z : c.c.approx) cv.push_back(ojson{{"re", z.real()}, {"im", z.imag()}});
    }
    j["c"] = std::move(cv);
    if (c.j0_all) {
        j["j0"] = "all";
    } else {
        ojson a = ojson::array();
        for (std::size_t v : c.j0) a.push_back(v);
        j["j0"] = std::move(a);
    }
    j["orientation"] = c.orientation == LoopOrientation::Ccw ? "ccw" : "cw";
    if (c.z) {
        ojson zv = ojson::array();
        if (c.z->mode == ParamMode::Exact) {
            for (const Rat& q : c.z->exact) zv.push_back(q.get_str());
        } else {
            for (const cd& z : c.z->approx) zv.push_back(ojson{{"re", z.real()}, {"im", z.imag()}});
        }
        j["z"] = std::move(zv);
    }
    if (c.verify_catalog) j["verify"] = *c.verify_catalog;
    return j;
}

}  // namespace

JobConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    JobConfig cfg;

    if (!j.contains("A")) throw ConfigError("/A", "missing required key");
    const auto& aj = j.at("A");
    if (!aj.is_array() || aj.empty()) throw ConfigError("/A", "must be a nonempty array of points");
    for (std::size_t i = 0; i < aj.size(); ++i) {
        const auto& pj = aj.at(i);
        std::string ptr = "/A/" + std::to_string(i);
        if (!pj.is_array() || pj.empty()) throw ConfigError(ptr, "point must be a nonempty array");
        IntVec p;
        for (std::size_t k = 0; k < pj.size(); ++k) {
            if (!pj.at(k).is_number_integer())
                throw ConfigError(ptr + "/" + std::to_string(k), "coordinate must be an integer");
            p.push_back(Int(pj.at(k).get<std::int64_t>()));
        }
        if (i == 0) cfg.A.n = p.size();
        if (p.size() != cfg.A.n) throw ConfigError(ptr, "points have inconsistent dimensions");
        cfg.A.points.push_back(std::move(p));
    }

    if (!j.contains("c")) throw ConfigError("/c", "missing required key");
    const auto& cj = j.at("c");
    if (!cj.is_array()) throw ConfigError("/c", "must be an array");
    if (cj.size() != cfg.A.n)
        throw ConfigError("/c", "length must equal the ambient dimension n = " +
                                    std::to_string(cfg.A.n));
    bool c_exact = true;
    for (const auto& e : cj)
        if (!e.is_string()) c_exact = false;
    std::vector<Rat> c_rat;
    std::vector<cd> c_cplx;
    for (std::size_t i = 0; i < cj.size(); ++i) {
        const auto& e = cj.at(i);
        std::string ptr = "/c/" + std::to_string(i);
        if (e.is_string()) {
            Rat q = parse_rational(e.get<std::string>(), ptr);
            if (c_exact)
                c_rat.push_back(q);
            else
                c_cplx.push_back(cd(rat_to_double(q), 0.0));
        } else if (e.is_object() && e.contains("re") && e.contains("im") &&
                   e.at("re").is_number() && e.at("im").is_number()) {
            c_cplx.push_back(cd(e.at("re").get<double>(), e.at("im").get<double>()));
        } else {
            throw ConfigError(ptr, "entry must be a rational string \"p/q\" or {re, im}");
        }
    }
    cfg.c = c_exact ? ParameterVector::from_rational(std::move(c_rat))
                    : ParameterVector::from_complex(std::move(c_cplx));

    const std::size_t npts = cfg.A.count();
    if (!j.contains("j0")) {
        cfg.j0_all = true;
    } else {
        const auto& jj = j.at("j0");
        auto check_one = [&](std::int64_t v, const std::string& ptr) {
            if (v < 1 || static_cast<std::size_t>(v) > npts)
                throw ConfigError(ptr, "j0 must be a 1-based index into A (N = " +
                                           std::to_string(npts) + ")");
            cfg.j0.push_back(static_cast<std::size_t>(v));
        };
        if (jj.is_string() && jj.get<std::string>() == "all") {
            cfg.j0_all = true;
        } else if (jj.is_number_integer()) {
            check_one(jj.get<std::int64_t>(), "/j0");
        } else if (jj.is_array()) {
            for (std::size_t i = 0; i < jj.size(); ++i) {
                if (!jj.at(i).is_number_integer())
                    throw ConfigError("/j0/" + std::to_string(i), "must be an integer");
                check_one(jj.at(i).get<std::int64_t>(), "/j0/" + std::to_string(i));
            }
        } else {
            throw ConfigError("/j0", "must be an integer, a list of integers, or \"all\"");
        }
    }

    if (j.contains("orientation")) {
        const auto& oj = j.at("orientation");
        if (oj == "ccw")
            cfg.orientation = LoopOrientation::Ccw;
        else if (oj == "cw")
            cfg.orientation = LoopOrientation::Cw;
        else
            throw ConfigError("/orientation", "must be \"ccw\" or \"cw\"");
    }

    if (j.contains("z")) {
        const auto& zj = j.at("z");
        if (!zj.is_array()) throw ConfigError("/z", "must be an array");
        if (zj.size() != npts)
            throw ConfigError("/z", "length must equal the number of points N = " +
                                        std::to_string(npts));
        bool z_exact = true;
        for (const auto& e : zj)
            if (!e.is_string()) z_exact = false;
        std::vector<Rat> z_rat;
        std::vector<cd> z_cplx;
        for (std::size_t i = 0; i < zj.size(); ++i) {
            const auto& e = zj.at(i);
            std::string ptr = "/z/" + std::to_string(i);
            if (e.is_string()) {
                Rat q = parse_rational(e.get<std::string>(), ptr);
                if (z_exact)
                    z_rat.push_back(q);
                else
                    z_cplx.push_back(cd(rat_to_double(q), 0.0));
            } else if (e.is_number()) {
                z_cplx.push_back(cd(e.get<double>(), 0.0));
            } else if (e.is_object() && e.contains("re") && e.contains("im") &&
                       e.at("re").is_number() && e.at("im").is_number()) {
                z_cplx.push_back(cd(e.at("re").get<double>(), e.at("im").get<double>()));
            } else {
                throw ConfigError(ptr, "entry must be a number, a rational string, or {re, im}");
            }
        }
        cfg.z = z_exact ? CoefficientVector::from_rational(std::move(z_rat))
                        : CoefficientVector::from_complex(std::move(z_cplx));
    }

    if (j.contains("verify")) {
        const auto& vj = j.at("verify");
        if (vj.is_string()) {
            cfg.verify_catalog = vj.get<std::string>();
        } else if (vj.is_object() && vj.contains("catalog") && vj.at("catalog").is_string()) {
            cfg.verify_catalog = vj.at("catalog").get<std::string>();
        } else if (vj.is_boolean()) {
            if (vj.get<bool>()) {
                // infer the catalog binding from A
                for (const char* id : {"power", "hermite", "kummer_square"}) {
                    PointConfiguration ca = catalog_configuration(id);
                    if (ca.n == cfg.A.n && ca.points == cfg.A.points) {
                        cfg.verify_catalog = id;
                        break;
                    }
                }
                if (!cfg.verify_catalog)
                    throw ConfigError("/verify", "A matches no catalog entry; name one explicitly");
            }
        } else {
            throw ConfigError("/verify", "must be a catalog id, {\"catalog\": id}, or a boolean");
        }
    }
    return cfg;
}

JobResult run(const JobConfig& config) {
    JobResult r;
    r.input_echo = echo_config(config);
    r.validation = validate_configuration(config.A);
    if (!r.validation.pass) return r;

    std::vector<std::size_t> js = config.j0;
    if (config.j0_all) {
        js.clear();
        for (std::size_t i = 1; i <= config.A.count(); ++i) js.push_back(i);
    }
    for (std::size_t j0 : js)
        r.reports.push_back(monodromy_at_infinity(config.A, config.c, j0, config.orientation));

    if (config.z) r.nondegeneracy = check_nondegeneracy(config.A, *config.z);

    if (config.verify_catalog) {
        const std::string& id = *config.verify_catalog;
        PointConfiguration ca = catalog_configuration(id);
        if (ca.n != config.A.n || ca.points != config.A.points)
            throw ConfigError("/verify", "config A does not match catalog '" + id + "'");
        VerifyReport v;
        v.catalog = id;
        v.j0 = catalog_j0(id);
        v.orientation = config.orientation;
        MonodromyReport er =
            monodromy_at_infinity(config.A, config.c, v.j0, config.orientation);
        OdeSystem sys = catalog_system(id, config.c);
        MonodromyMatrix mm = numeric_monodromy(sys, std::nullopt, 1e-10, 0.0,
                                               config.orientation == LoopOrientation::Cw);
        v.radius = mm.radius;
        v.steps = mm.steps;
        v.engine_spectrum = roots(er.char_poly);
        v.oracle_spectrum = numeric_spectrum(mm);
        v.match = compare_spectra(v.engine_spectrum, v.oracle_spectrum, 1e-6);
        v.pass = v.match.pass;
        r.verify = std::move(v);
    }
    return r;
}

int exit_code_for(const JobResult& r) {
    if (!r.validation.pass) return 2;
    if (r.verify && !r.verify->pass) return 3;
    return 0;
}

nlohmann::ordered_json render_json(const JobResult& r) {
    ojson out;
    out["input"] = r.input_echo;
    ojson val;
    val["pass"] = r.validation.pass;
    ojson div = ojson::array();
    for (const Int& d : r.validation.snf_divisors) div.push_back(to_i64(d));
    val["snf_divisors"] = std::move(div);
    val["delta_dim"] = r.validation.delta_dim;
    if (!r.validation.pass) val["message"] = r.validation.message;
    out["validation"] = std::move(val);

    ojson results = ojson::array();
    for (const MonodromyReport& rep : r.reports) results.push_back(report_json(rep));
    out["results"] = std::move(results);

    if (r.nondegeneracy) {
        ojson nd;
        nd["overall"] = verdict_name(r.nondegeneracy->overall);
        ojson faces = ojson::array();
        for (const FaceCheck& f : r.nondegeneracy->faces) {
            ojson fj;
            fj["dim"] = f.dim;
            fj["points"] = points_json(f.face_points);
            fj["verdict"] = verdict_name(f.verdict);
            fj["detail"] = f.detail;
            faces.push_back(std::move(fj));
        }
        nd["faces"] = std::move(faces);
        out["nondegeneracy"] = std::move(nd);
    }

    if (r.verify) {
        const VerifyReport& v = *r.verify;
        ojson vj;
        vj["catalog"] = v.catalog;
        vj["j0"] = v.j0;
        vj["orientation"] = v.orientation == LoopOrientation::Ccw ? "ccw" : "cw";
        vj["radius"] = v.radius;
        vj["steps"] = v.steps;
        vj["engine_spectrum"] = spectrum_json(v.engine_spectrum);
        vj["oracle_spectrum"] = spectrum_json(v.oracle_spectrum);
        vj["max_distance"] = v.match.max_distance;
        vj["cardinality_mismatch"] = v.match.cardinality_mismatch;
        vj["count_engine"] = v.match.count_a;
        vj["count_oracle"] = v.match.count_b;
        vj["pass"] = v.pass;
        out["verify"] = std::move(vj);
    }

    out["version"] = r.version;
    return out;
}

JobResult parse_result(const nlohmann::ordered_json& j) {
    JobResult r;
    r.input_echo = j.at("input");
    const auto& val = j.at("validation");
    r.validation.pass = val.at("pass").get<bool>();
    for (const auto& d : val.at("snf_divisors"))
        r.validation.snf_divisors.push_back(Int(d.get<std::int64_t>()));
    r.validation.delta_dim = val.at("delta_dim").get<int>();
    r.validation.generates_lattice = r.validation.pass;
    r.validation.full_dimensional = r.validation.pass;
    if (val.contains("message")) r.validation.message = val.at("message").get<std::string>();

    LoopOrientation orientation = LoopOrientation::Ccw;
    if (r.input_echo.contains("orientation") && r.input_echo.at("orientation") == "cw")
        orientation = LoopOrientation::Cw;
    for (const auto& rep : j.at("results")) r.reports.push_back(report_from_json(rep, orientation));

    if (j.contains("nondegeneracy")) {
        NondegeneracyReport nd;
        nd.overall = verdict_from_name(j.at("nondegeneracy").at("overall").get<std::string>());
        for (const auto& fj : j.at("nondegeneracy").at("faces")) {
            FaceCheck f;
            f.dim = fj.at("dim").get<int>();
            f.face_points = points_from_json(fj.at("points"));
            f.verdict = verdict_from_name(fj.at("verdict").get<std::string>());
            f.detail = fj.at("detail").get<std::string>();
            nd.faces.push_back(std::move(f));
        }
        r.nondegeneracy = std::move(nd);
    }

    if (j.contains("verify")) {
        const auto& vj = j.at("verify");
        VerifyReport v;
        v.catalog = vj.at("catalog").get<std::string>();
        v.j0 = vj.at("j0").get<std::size_t>();
        v.orientation = vj.at("orientation") == "cw" ? LoopOrientation::Cw : LoopOrientation::Ccw;
        v.radius = vj.at("radius").get<double>();
        v.steps = vj.at("steps").get<std::size_t>();
        v.engine_spectrum = spectrum_from_json(vj.at("engine_spectrum"));
        v.oracle_spectrum = spectrum_from_json(vj.at("oracle_spectrum"));
        v.match.max_distance = vj.at("max_distance").get<double>();
        v.match.cardinality_mismatch = vj.at("cardinality_mismatch").get<bool>();
        v.match.count_a = vj.at("count_engine").get<std::size_t>();
        v.match.count_b = vj.at("count_oracle").get<std::size_t>();
        v.pass = vj.at("pass").get<bool>();
        v.match.pass = v.pass;
        r.verify = std::move(v);
    }

    r.version = j.at("version").get<std::string>();
    return r;
}

namespace {

bool spectra_equal(const SpectrumMultiset& a, const SpectrumMultiset& b) {
    return a.entries == b.entries;
}

bool reports_equal(const MonodromyReport& a, const MonodromyReport& b) {
    if (a.j0 != b.j0 || a.degree != b.degree ||
        a.t_minus_one_exponent != b.t_minus_one_exponent ||
        a.lattice_generated != b.lattice_generated ||
        a.theorem_hypotheses_met != b.theorem_hypotheses_met)
        return false;
    if (!(a.char_poly == b.char_poly)) return false;
    if (a.contributions.size() != b.contributions.size()) return false;
    for (std::size_t i = 0; i < a.contributions.size(); ++i) {
        const auto& x = a.contributions[i];
        const auto& y = b.contributions[i];
        if (x.delta_points != y.delta_points || x.vol_delta_hat != y.vol_delta_hat) return false;
        if (x.gammas.size() != y.gammas.size()) return false;
        for (std::size_t k = 0; k < x.gammas.size(); ++k) {
            const auto& g = x.gammas[k];
            const auto& h = y.gammas[k];
            if (g.gamma_points != h.gamma_points || g.rho != h.rho || g.height != h.height ||
                g.vol_gamma_hat != h.vol_gamma_hat)
                return false;
        }
    }
    const auto& ra = a.resonance;
    const auto& rb = b.resonance;
    if (ra.status != rb.status || ra.witness != rb.witness ||
        ra.checks.size() != rb.checks.size())
        return false;
    for (std::size_t i = 0; i < ra.checks.size(); ++i) {
        const auto& x = ra.checks[i];
        const auto& y = rb.checks[i];
        if (x.facet_vertices != y.facet_vertices || x.rho != y.rho ||
            x.pairing_exact != y.pairing_exact || x.pairing_float != y.pairing_float ||
            x.distance_to_integer != y.distance_to_integer || x.integral != y.integral ||
            x.warning != y.warning)
            return false;
    }
    return true;
}

}  // namespace

bool results_equal(const JobResult& a, const JobResult& b) {
    if (a.version != b.version) return false;
    if (a.input_echo != b.input_echo) return false;
    if (a.validation.pass != b.validation.pass ||
        a.validation.snf_divisors != b.validation.snf_divisors ||
        a.validation.delta_dim != b.validation.delta_dim ||
        a.validation.message != b.validation.message)
        return false;
    if (a.reports.size() != b.reports.size()) return false;
    for (std::size_t i = 0; i < a.reports.size(); ++i)
        if (!reports_equal(a.reports[i], b.reports[i])) return false;
    if (a.nondegeneracy.has_value() != b.nondegeneracy.has_value()) return false;
    if (a.nondegeneracy) {
        if (a.nondegeneracy->overall != b.nondegeneracy->overall) return false;
        if (a.nondegeneracy->faces.size() != b.nondegeneracy->faces.size()) return false;
        for (std::size_t i = 0; i < a.nondegeneracy->faces.size(); ++i) {
            const auto& x = a.nondegeneracy->faces[i];
            const auto& y = b.nondegeneracy->faces[i];
            if (x.dim != y.dim || x.face_points != y.face_points || x.verdict != y.verdict ||
                x.detail != y.detail)
                return false;
        }
    }
    if (a.verify.has_value() != b.verify.has_value()) return false;
    if (a.verify) {
        const auto& x = *a.verify;
        const auto& y = *b.verify;
        if (x.catalog != y.catalog || x.j0 != y.j0 || x.radius != y.radius ||
            x.steps != y.steps || x.pass != y.pass ||
            x.match.max_distance != y.match.max_distance ||
            !spectra_equal(x.engine_spectrum, y.engine_spectrum) ||
            !spectra_equal(x.oracle_spectrum, y.oracle_spectrum))
            return false;
    }
    return true;
}

namespace {

std::string points_text(const std::vector<IntVec>& pts) {
    if (pts.empty()) return "{}";
    std::ostringstream os;
    os << "conv{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ", ";
        os << to_string(pts[i]);
    }
    os << "}";
    return os.str();
}

std::string factored_text(const FactoredCharPoly& p) {
    if (p.factors.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
        const Factor& f = p.factors[i];
        if (i) os << " ";
        std::string mu = unit_scalar_to_string(f.mu);
        os << "(t";
        if (f.h > 1) os << "^" << f.h;
        if (mu == "-1")
            os << " + 1";
        else
            os << " - " << mu;
        os << ")^" << f.mult;
    }
    return os.str();
}

}  // namespace

std::string render_text(const JobResult& r) {
    std::ostringstream os;
    os << "ahg " << r.version << "\n";
    if (!r.validation.pass) {
        os << "VALIDATION FAILED: " << r.validation.message << "\n";
        return os.str();
    }
    os << "validation: pass (divisors [";
    for (std::size_t i = 0; i < r.validation.snf_divisors.size(); ++i)
        os << (i ? ", " : "") << r.validation.snf_divisors[i];
    os << "], dim = " << r.validation.delta_dim << ")\n";

    for (const MonodromyReport& rep : r.reports) {
        os << "\nj0 = " << rep.j0 << "  (" << (rep.orientation == LoopOrientation::Ccw
                                                   ? "counterclockwise"
                                                   : "clockwise")
           << " loop)\n";
        os << "  degree = " << rep.degree << ", (t - 1) exponent = " << rep.t_minus_one_exponent
           << "\n";
        if (rep.contributions.empty()) {
            os << "  no facets meet a(j0) away from the origin\n";
        } else {
            os << "  contributions:\n";
            for (const FacetContribution& fc : rep.contributions) {
                os << "    Delta_i = " << points_text(fc.delta_points)
                   << "  Vol(hat Delta_i) = " << fc.vol_delta_hat << "\n";
                for (const GammaContribution& g : fc.gammas) {
                    os << "      Gamma = " << points_text(g.gamma_points) << "  rho = "
                       << to_string(g.rho) << "  h = " << g.height
                       << "  Vol(hat Gamma) = " << g.vol_gamma_hat << "\n";
                }
            }
        }
        os << "  char poly: " << factored_text(rep.char_poly) << "\n";
        switch (rep.resonance.status) {
            case ResonanceStatus::NonResonant:
                os << "  resonance: non-resonant\n";
                break;
            case ResonanceStatus::NonResonantNearInteger:
                os << "  resonance: non-resonant\n";
                os << "  WARNING: a facet pairing is within the near-integer band\n";
                break;
            case ResonanceStatus::Resonant: {
                os << "  resonance: resonant";
                if (rep.resonance.witness) {
                    const auto& w = rep.resonance.checks[*rep.resonance.witness];
                    os << " (witness facet " << points_text(w.facet_vertices) << ", rho = "
                       << to_string(w.rho) << ")";
                }
                os << "\n  WARNING: c is resonant; theorem hypotheses not met\n";
                break;
            }
        }
    }

    if (r.nondegeneracy) {
        os << "\nnon-degeneracy: " << verdict_name(r.nondegeneracy->overall) << "\n";
        for (const FaceCheck& f : r.nondegeneracy->faces) {
            os << "  dim " << f.dim << " face " << points_text(f.face_points) << ": "
               << verdict_name(f.verdict) << " (" << f.detail << ")\n";
        }
    }

    if (r.verify) {
        const VerifyReport& v = *r.verify;
        os << "\nverify (" << v.catalog << ", j0 = " << v.j0 << "): "
           << (v.pass ? "PASS" : "FAIL") << "  radius = " << v.radius << ", steps = " << v.steps
           << ", max spectral distance = " << v.match.max_distance << "\n";
    }
    return os.str();
}

}  // namespace ahg
