#include "r31/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "r31/common.hpp"

namespace r31 {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

double num(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(where + ": must be finite");
    return v;
}

double positive(const json& j, const std::string& where) {
    const double v = num(j, where);
    if (!(v > 0)) throw ConfigError(where + ": must be positive");
    return v;
}

int posint(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() <= 0)
        throw ConfigError(where + ": expected a positive integer");
    return j.get<int>();
}

std::string str(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + ": expected a string");
    return j.get<std::string>();
}

bool boolean(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw ConfigError(where + ": expected true or false");
    return j.get<bool>();
}

std::array<double, 2> pair_of(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(where + ": expected [lo, hi]");
    return {num(j[0], where + "[0]"), num(j[1], where + "[1]")};
}

SystemSpec parse_system(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw ConfigError("system: missing 'type'");
    SystemSpec s;
    const std::string type = str(j["type"], "system.type");
    if (type == "honeycomb") {
        check_keys(j, "system", {"type", "Mtilde", "Ktilde", "k1", "k2", "point", "N3", "D12", "D22",
                                 "D66", "lumped_plate_mass"});
        s.kind = SystemSpec::Kind::Honeycomb;
        auto& h = s.honeycomb;
        if (j.contains("Mtilde")) h.Mtilde = positive(j["Mtilde"], "system.Mtilde");
        if (j.contains("Ktilde")) h.Ktilde = positive(j["Ktilde"], "system.Ktilde");
        if (j.contains("N3")) h.N3 = num(j["N3"], "system.N3");
        if (j.contains("D12")) h.D12 = num(j["D12"], "system.D12");
        if (j.contains("D22")) h.D22 = num(j["D22"], "system.D22");
        if (j.contains("D66")) h.D66 = num(j["D66"], "system.D66");
        if (j.contains("lumped_plate_mass"))
            h.lumped_plate_mass = boolean(j["lumped_plate_mass"], "system.lumped_plate_mass");
        if (j.contains("point")) {
            s.point = str(j["point"], "system.point");
            if (s.point != "Gamma" && s.point != "X" && s.point != "M")
                throw ConfigError("system.point: expected Gamma, X or M");
            if (j.contains("k1") || j.contains("k2"))
                throw ConfigError("system: give either 'point' or 'k1'/'k2'");
        } else {
            if (j.contains("k1")) h.k1 = num(j["k1"], "system.k1");
            if (j.contains("k2")) h.k2 = num(j["k2"], "system.k2");
        }
        if (s.point == "X") {
            h.k1 = 4.0 * pi / 3.0;
            h.k2 = 0;
        } else if (s.point == "M") {
            h.k1 = pi;
            h.k2 = pi / std::sqrt(3.0);
        } else if (s.point == "Gamma") {
            h.k1 = 1e-6;  // Gamma itself is a double root of the stiffness
            h.k2 = 0;
        }
    } else if (type == "generic") {
        check_keys(j, "system", {"type", "M", "K", "M3", "N3"});
        s.kind = SystemSpec::Kind::Generic;
        auto& g = s.generic;
        if (!j.contains("M") || !j.contains("K")) throw ConfigError("system: generic needs 'M' and 'K'");
        const json& M = j["M"];
        if (!M.is_array() || M.size() != 2 || !M[0].is_array() || !M[1].is_array() || M[0].size() != 2 ||
            M[1].size() != 2)
            throw ConfigError("system.M: expected a 2x2 matrix");
        g.m11 = num(M[0][0], "system.M[0][0]");
        g.m12 = num(M[0][1], "system.M[0][1]");
        g.m22 = num(M[1][1], "system.M[1][1]");
        if (num(M[1][0], "system.M[1][0]") != g.m12) throw ConfigError("system.M: must be symmetric");
        const json& K = j["K"];
        if (K.is_array() && K.size() == 2 && K[0].is_number()) {
            g.k1 = num(K[0], "system.K[0]");
            g.k2 = num(K[1], "system.K[1]");
        } else if (K.is_array() && K.size() == 2 && K[0].is_array() && K[1].is_array() &&
                   K[0].size() == 2 && K[1].size() == 2) {
            g.k1 = num(K[0][0], "system.K[0][0]");
            g.k2 = num(K[1][1], "system.K[1][1]");
            if (num(K[0][1], "system.K[0][1]") != 0 || num(K[1][0], "system.K[1][0]") != 0)
                throw ConfigError("system.K: must be diagonal");
        } else {
            throw ConfigError("system.K: expected [k1, k2] or a diagonal 2x2 matrix");
        }
        if (j.contains("M3")) g.cubic_v = num(j["M3"], "system.M3");
        if (j.contains("N3")) g.cubic_y = num(j["N3"], "system.N3");
        try {
            g.validate();
        } catch (const Rejection& e) {
            throw ConfigError(std::string("system: ") + e.what());
        }
    } else {
        throw ConfigError("system.type: expected 'honeycomb' or 'generic'");
    }
    return s;
}

json system_to_json(const SystemSpec& s) {
    if (s.kind == SystemSpec::Kind::Generic) {
        const auto& g = s.generic;
        return {{"type", "generic"},
                {"M", {{g.m11, g.m12}, {g.m12, g.m22}}},
                {"K", {g.k1, g.k2}},
                {"M3", g.cubic_v},
                {"N3", g.cubic_y}};
    }
    const auto& h = s.honeycomb;
    json j = {{"type", "honeycomb"}, {"Mtilde", h.Mtilde}, {"Ktilde", h.Ktilde}, {"N3", h.N3},
              {"D12", h.D12},        {"D22", h.D22},       {"D66", h.D66},
              {"lumped_plate_mass", h.lumped_plate_mass}};
    if (s.point.empty()) {
        j["k1"] = h.k1;
        j["k2"] = h.k2;
    } else {
        j["point"] = s.point;
    }
    return j;
}

}  // namespace

OscillatorSystem SystemSpec::build() const {
    return kind == Kind::Generic ? generic : honeycomb_system(honeycomb);
}

Region region_from_string(const std::string& s) {
    if (s == "I") return Region::I;
    if (s == "II") return Region::II;
    if (s == "III") return Region::III;
    if (s == "IV") return Region::IV;
    throw ConfigError("region: expected I, II, III or IV");
}

RunConfig parse_config(const json& j) {
    check_keys(j, "config", {"system", "effective", "energies", "amplitudes", "state", "thresholds",
                             "frequency_form", "regime", "sweep", "verify", "level_points", "threads",
                             "output"});
    RunConfig c;
    if (j.contains("system")) c.system = parse_system(j["system"]);
    if (j.contains("effective")) {
        const json& e = j["effective"];
        check_keys(e, "effective", {"a1", "a2"});
        if (!e.contains("a1") || !e.contains("a2")) throw ConfigError("effective: needs a1 and a2");
        c.a1 = num(e["a1"], "effective.a1");
        c.a2 = num(e["a2"], "effective.a2");
    }
    if (j.contains("energies")) {
        if (!j["energies"].is_array()) throw ConfigError("energies: expected an array");
        for (std::size_t i = 0; i < j["energies"].size(); ++i)
            c.energies.push_back(num(j["energies"][i], "energies[" + std::to_string(i) + "]"));
    }
    if (j.contains("amplitudes")) {
        const json& a = j["amplitudes"];
        check_keys(a, "amplitudes", {"a_minus", "a_plus"});
        if (!a.contains("a_minus") || !a.contains("a_plus"))
            throw ConfigError("amplitudes: needs a_minus and a_plus");
        c.a_minus = num(a["a_minus"], "amplitudes.a_minus");
        c.a_plus = num(a["a_plus"], "amplitudes.a_plus");
        if (*c.a_minus < 0 || *c.a_plus < 0) throw ConfigError("amplitudes: must be nonnegative");
    }
    if (j.contains("state")) {
        const json& s = j["state"];
        check_keys(s, "state", {"E", "I2", "region"});
        if (s.contains("E")) c.E = num(s["E"], "state.E");
        if (s.contains("I2")) c.I2 = positive(s["I2"], "state.I2");
        if (s.contains("region")) c.region = region_from_string(str(s["region"], "state.region"));
    }
    if (j.contains("thresholds")) {
        const json& t = j["thresholds"];
        check_keys(t, "thresholds", {"epsilon", "C1", "C2", "tau_zone", "tau_E"});
        auto& th = c.thresholds;
        if (t.contains("epsilon")) th.epsilon = positive(t["epsilon"], "thresholds.epsilon");
        if (t.contains("C1")) th.C1 = positive(t["C1"], "thresholds.C1");
        if (t.contains("C2")) th.C2 = positive(t["C2"], "thresholds.C2");
        if (t.contains("tau_zone")) th.tau_zone = positive(t["tau_zone"], "thresholds.tau_zone");
        if (t.contains("tau_E")) {
            if (t["tau_E"].is_string() && t["tau_E"] == "auto")
                th.tau_E = -1;
            else
                th.tau_E = positive(t["tau_E"], "thresholds.tau_E");
        }
    }
    if (j.contains("frequency_form")) {
        try {
            c.form = frequency_form_from_string(str(j["frequency_form"], "frequency_form"));
        } catch (const Rejection& e) {
            throw ConfigError(e.what());
        }
    }
    if (j.contains("regime")) {
        c.regime = str(j["regime"], "regime");
        if (c.regime != "auto" && c.regime != "nonresonant" && c.regime != "resonant")
            throw ConfigError("regime: expected auto, nonresonant or resonant");
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        check_keys(s, "sweep", {"points", "gamma_offset", "grid", "boundary_samples", "curves", "curve_R"});
        if (s.contains("points")) c.sweep.points = posint(s["points"], "sweep.points");
        if (s.contains("gamma_offset")) c.sweep.gamma_offset = positive(s["gamma_offset"], "sweep.gamma_offset");
        if (s.contains("grid")) c.sweep.grid = posint(s["grid"], "sweep.grid");
        if (s.contains("boundary_samples"))
            c.sweep.boundary_samples = posint(s["boundary_samples"], "sweep.boundary_samples");
        if (s.contains("curves")) c.sweep.curves = boolean(s["curves"], "sweep.curves");
        if (s.contains("curve_R")) {
            const json& r = s["curve_R"];
            check_keys(r, "sweep.curve_R", {"Mtilde", "Ktilde"});
            if (!r.contains("Mtilde") || !r.contains("Ktilde"))
                throw ConfigError("sweep.curve_R: needs Mtilde and Ktilde ranges");
            const auto m = pair_of(r["Mtilde"], "sweep.curve_R.Mtilde");
            const auto k = pair_of(r["Ktilde"], "sweep.curve_R.Ktilde");
            c.sweep.curve_R = std::array<double, 4>{m[0], m[1], k[0], k[1]};
        }
    }
    if (j.contains("verify")) {
        const json& v = j["verify"];
        check_keys(v, "verify", {"periods", "dt_fraction", "scheme", "tol_abs", "calib_C",
                                 "period_rel_tol", "drift_tol"});
        auto& vc = c.verify;
        if (v.contains("periods")) vc.periods = positive(v["periods"], "verify.periods");
        if (v.contains("dt_fraction")) {
            vc.dt_fraction = positive(v["dt_fraction"], "verify.dt_fraction");
            if (vc.dt_fraction > 1) throw ConfigError("verify.dt_fraction: must be at most 1");
        }
        if (v.contains("scheme")) {
            try {
                vc.scheme = exact_scheme_from_string(str(v["scheme"], "verify.scheme"));
            } catch (const Rejection& e) {
                throw ConfigError(e.what());
            }
        }
        if (v.contains("tol_abs")) vc.tol_abs = positive(v["tol_abs"], "verify.tol_abs");
        if (v.contains("calib_C")) {
            vc.calib_C = num(v["calib_C"], "verify.calib_C");
            if (vc.calib_C < 0) throw ConfigError("verify.calib_C: must be nonnegative");
        }
        if (v.contains("period_rel_tol")) vc.period_rel_tol = positive(v["period_rel_tol"], "verify.period_rel_tol");
        if (v.contains("drift_tol")) vc.drift_tol = positive(v["drift_tol"], "verify.drift_tol");
    }
    if (j.contains("level_points")) c.level_points = posint(j["level_points"], "level_points");
    if (j.contains("threads")) c.threads = posint(j["threads"], "threads");
    if (j.contains("output")) {
        const json& o = j["output"];
        check_keys(o, "output", {"dir", "format"});
        if (o.contains("dir")) c.out_dir = str(o["dir"], "output.dir");
        if (o.contains("format")) {
            c.format = str(o["format"], "output.format");
            if (c.format != "json" && c.format != "csv") throw ConfigError("output.format: expected json or csv");
        }
    }
    return c;
}

json RunConfig::to_json() const {
    json j;
    if (system) j["system"] = system_to_json(*system);
    if (a1) j["effective"] = {{"a1", *a1}, {"a2", *a2}};
    if (!energies.empty()) j["energies"] = energies;
    if (a_minus) j["amplitudes"] = {{"a_minus", *a_minus}, {"a_plus", *a_plus}};
    if (E || I2 || region) {
        json s = json::object();
        if (E) s["E"] = *E;
        if (I2) s["I2"] = *I2;
        if (region) s["region"] = to_string(*region);
        j["state"] = s;
    }
    j["thresholds"] = {{"epsilon", thresholds.epsilon},
                       {"C1", thresholds.C1},
                       {"C2", thresholds.C2},
                       {"tau_zone", thresholds.tau_zone}};
    if (thresholds.tau_E < 0)
        j["thresholds"]["tau_E"] = "auto";
    else
        j["thresholds"]["tau_E"] = thresholds.tau_E;
    j["frequency_form"] = to_string(form);
    j["regime"] = regime;
    j["sweep"] = {{"points", sweep.points},
                  {"gamma_offset", sweep.gamma_offset},
                  {"grid", sweep.grid},
                  {"boundary_samples", sweep.boundary_samples},
                  {"curves", sweep.curves}};
    if (sweep.curve_R)
        j["sweep"]["curve_R"] = {{"Mtilde", {(*sweep.curve_R)[0], (*sweep.curve_R)[1]}},
                                 {"Ktilde", {(*sweep.curve_R)[2], (*sweep.curve_R)[3]}}};
    j["verify"] = {{"periods", verify.periods},         {"dt_fraction", verify.dt_fraction},
                   {"scheme", to_string(verify.scheme)}, {"tol_abs", verify.tol_abs},
                   {"calib_C", verify.calib_C},         {"period_rel_tol", verify.period_rel_tol},
                   {"drift_tol", verify.drift_tol}};
    j["level_points"] = level_points;
    j["threads"] = threads;
    j["output"] = {{"dir", out_dir}, {"format", format}};
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("command")) j = j["config"];
    return parse_config(j);
}

}  // namespace r31
