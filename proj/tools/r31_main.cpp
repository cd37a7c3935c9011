// r31: command-line front end for the 3:1 resonant normal-form pipeline.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "r31/bandgap.hpp"
#include "r31/bnf.hpp"
#include "r31/common.hpp"
#include "r31/config.hpp"
#include "r31/freq.hpp"
#include "r31/modal.hpp"
#include "r31/portrait.hpp"
#include "r31/quartic.hpp"
#include "r31/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace r31;

namespace {

constexpr const char* kVersion = "r31 1.0.0";

struct Cli {
    std::string config_path;
    std::string out_dir;
    int grid = 0;
    int threads = 0;
    std::string format;
};

json modal_json(const ModalData& m) {
    return {{"omega_minus", m.omega_minus},
            {"omega_plus", m.omega_plus},
            {"sigma", m.sigma},
            {"phi", {{m.phi[0][0], m.phi[0][1]}, {m.phi[1][0], m.phi[1][1]}}}};
}

json system_json(const OscillatorSystem& s) {
    return {{"M", {{s.m11, s.m12}, {s.m12, s.m22}}}, {"K", {s.k1, s.k2}}, {"M3", s.cubic_v}, {"N3", s.cubic_y}};
}

json coeffs_json(const QuarticCoeffs& q) {
    return {{"f", {{"f04", q.f[0]}, {"f13", q.f[1]}, {"f22", q.f[2]}, {"f31", q.f[3]}, {"f40", q.f[4]}}},
            {"G2020", q.g2020},
            {"G1111", q.g1111},
            {"G0202", q.g0202},
            {"chi", q.chi}};
}

json params_json(const EffectiveParams& p) {
    return {{"a0", p.a0}, {"a1", p.a1}, {"a2", p.a2}, {"I2", p.J2}, {"sigma", p.sigma},
            {"chi_abs", p.chi}, {"psi_shift", p.psi_shift}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json summary_json(const PortraitSummary& s) {
    json crit = json::array();
    for (const auto& c : s.criticals)
        crit.push_back({{"line", to_string(c.line)}, {"psi", c.psi}, {"x", c.x},
                        {"kind", to_string(c.kind)}, {"energy", c.energy}});
    json regs = json::array();
    for (const auto& r : s.regions)
        regs.push_back({{"region", to_string(r.region)}, {"E_lo", r.e_lo}, {"E_hi", r.e_hi}, {"lines", r.lines}});
    return {{"zone", to_string(s.zone)},
            {"degenerate", is_degenerate(s.zone)},
            {"a1", s.a1},
            {"a2", s.a2},
            {"critical_points", crit},
            {"E_max", optional_json(s.e_max)},
            {"E_min", optional_json(s.e_min)},
            {"E_sad", optional_json(s.e_sad)},
            {"a_at_1", s.a_at_1},
            {"regions", regs}};
}

json roots_json(const QuarticRoots& r) {
    json rs = json::array();
    for (int i = 0; i < r.count; ++i) rs.push_back({{"x", r.xs[i]}, {"line", to_string(r.line_of[i])}});
    json j = {{"count", r.count}, {"roots", rs}, {"near_degenerate", r.near_degenerate},
              {"from_oracle", r.from_oracle}};
    if (r.has_complex_pair) j["complex_pair"] = {r.x_complex.real(), r.x_complex.imag()};
    return j;
}

const char* regime_name(Regime r) { return to_string(r); }

json freq_json(const FrequencyPair& f) {
    json j = {{"w_minus", f.w_minus}, {"w_plus", f.w_plus}, {"regime", regime_name(f.regime)}};
    if (f.regime != Regime::Nonresonant && f.dA_dE != 0) {
        j["E"] = f.E;
        j["I2"] = f.I2;
        j["zone"] = to_string(f.zone);
        j["region"] = to_string(f.region);
        j["sign"] = f.sign_used;
        j["omega1"] = f.omega1;
        j["area"] = f.area;
        j["dA_dE"] = f.dA_dE;
        j["dA_dI2"] = f.dA_dI2;
    }
    return j;
}

json extremum_json(const Extremum& e) {
    return {{"value", e.value}, {"s", e.s}, {"k1", e.k1}, {"k2", e.k2}, {"regime", to_string(e.regime)}};
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f.precision(17);
    return f;
}

// Writes the main document as <dir>/<command>.json or .csv and echoes JSON to stdout.
void emit(const RunConfig& cfg, const std::string& command, const json& result) {
    json doc = {{"command", command}, {"version", kVersion}, {"config", cfg.to_json()}, {"result", result}};
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        if (cfg.format == "csv") {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(doc, "", rows);
            auto f = open_out(fs::path(cfg.out_dir) / (command + ".csv"));
            f << "key,value\n";
            for (const auto& [k, v] : rows) f << k << ',' << (v.find(',') != std::string::npos ? "\"" + v + "\"" : v) << '\n';
        } else {
            auto f = open_out(fs::path(cfg.out_dir) / (command + ".json"));
            f << doc.dump(2) << '\n';
        }
    }
    std::cout << doc.dump(2) << std::endl;
}

const SystemSpec& need_system(const RunConfig& c) {
    if (!c.system) throw ConfigError("this command needs a 'system' section");
    return *c.system;
}

struct Pipeline {
    OscillatorSystem sys;
    ModalData m;
    QuarticCoeffs q;
};

Pipeline pipeline(const RunConfig& c) {
    Pipeline p;
    p.sys = need_system(c).build();
    p.m = diagonalize(p.sys);
    p.q = quartic_coeffs(p.m, p.sys.cubic_v, p.sys.cubic_y);
    return p;
}

// Effective parameters from "effective", or from the system with amplitudes/I2.
EffectiveParams effective_from(const RunConfig& c) {
    if (c.a1) return make_params(*c.a1, *c.a2);
    if (!c.system) throw ConfigError("need 'effective' {a1, a2} or a 'system' with amplitudes or state.I2");
    const Pipeline p = pipeline(c);
    require_coupling(p.q);
    if (c.a_minus) return amplitudes_to_chart(*c.a_minus, *c.a_plus, p.q, p.m, c.thresholds.tau_zone, c.thresholds.tau_E).params;
    if (c.I2) return effective_params(p.q, p.m, *c.I2);
    throw ConfigError("need amplitudes or state.I2 to fix the effective parameters");
}

int cmd_decompose(const RunConfig& c) {
    const auto sys = need_system(c).build();
    const ModalData m = diagonalize(sys);
    emit(c, "decompose", {{"system", system_json(sys)}, {"modal", modal_json(m)}});
    return 0;
}

int cmd_coeffs(const RunConfig& c) {
    const Pipeline p = pipeline(c);
    json r = {{"modal", modal_json(p.m)}, {"coeffs", coeffs_json(p.q)},
              {"degenerate_coupling", p.q.degenerate_coupling()}};
    if (!p.q.degenerate_coupling() && (c.a_minus || c.I2)) {
        if (c.a_minus) {
            const ChartEntry ce = amplitudes_to_chart(*c.a_minus, *c.a_plus, p.q, p.m, c.thresholds.tau_zone,
                                                      c.thresholds.tau_E);
            r["effective"] = params_json(ce.params);
            r["E"] = ce.E;
            r["x_dagger"] = ce.x_dagger;
        } else {
            r["effective"] = params_json(effective_params(p.q, p.m, *c.I2));
        }
    }
    emit(c, "coeffs", r);
    return 0;
}

int cmd_classify(const RunConfig& c) {
    const EffectiveParams p = effective_from(c);
    const Zone z = classify(p.a1, p.a2, c.thresholds.tau_zone);
    emit(c, "classify", {{"a1", p.a1}, {"a2", p.a2}, {"zone", to_string(z)}, {"degenerate", is_degenerate(z)},
                         {"g", g_boundary(p.a1)}, {"h", gneg_boundary(p.a1)}, {"g_tilde", gtilde_boundary(p.a1)}});
    return 0;
}

int cmd_portrait(const RunConfig& c) {
    const EffectiveParams p = effective_from(c);
    const Zone z = classify(p.a1, p.a2, c.thresholds.tau_zone);
    json r;
    if (is_degenerate(z)) {
        r = {{"zone", to_string(z)}, {"degenerate", true}, {"a1", p.a1}, {"a2", p.a2}, {"curves", json::array()}};
        emit(c, "portrait", r);
        return 0;
    }
    const PortraitSummary s = portrait_summary(p, c.thresholds.tau_zone);
    r = summary_json(s);
    json curves = json::array();
    for (std::size_t i = 0; i < c.energies.size(); ++i) {
        const double E = c.energies[i];
        for (const auto& reg : s.regions) {
            if (!(E > reg.e_lo && E < reg.e_hi)) continue;
            json entry = {{"E", E}, {"region", to_string(reg.region)}};
            try {
                const LevelCurve lc = level_curve(p, E, reg.region, c.level_points,
                                                  c.thresholds.tau_E < 0 ? -1 : c.thresholds.tau_E);
                entry["points"] = lc.x.size();
                if (!c.out_dir.empty()) {
                    fs::create_directories(c.out_dir);
                    const std::string name =
                        "portrait_E" + std::to_string(i) + "_" + to_string(reg.region) + ".csv";
                    auto f = open_out(fs::path(c.out_dir) / name);
                    f << "psi,x\n";
                    for (std::size_t k = 0; k < lc.x.size(); ++k) f << lc.psi[k] << ',' << lc.x[k] << '\n';
                    entry["file"] = name;
                }
            } catch (const Rejection& e) {
                entry["skipped"] = e.what();
            }
            curves.push_back(entry);
        }
    }
    r["curves"] = curves;
    emit(c, "portrait", r);
    return 0;
}

int cmd_roots(const RunConfig& c) {
    const EffectiveParams p = effective_from(c);
    std::vector<double> Es = c.energies;
    if (c.E) Es.insert(Es.begin(), *c.E);
    if (Es.empty()) throw ConfigError("roots: need state.E or energies");
    json arr = json::array();
    for (double E : Es) {
        json j = roots_json(roots_x(p.a1, p.a2, E));
        j["E"] = E;
        arr.push_back(j);
    }
    emit(c, "roots", {{"a1", p.a1}, {"a2", p.a2}, {"energies", arr}});
    return 0;
}

FrequencyPair compute_freqs(const RunConfig& c, const Pipeline& p, std::string& regime_used) {
    const bool have_amp = c.a_minus.has_value();
    if (have_amp && *c.a_minus == 0 && *c.a_plus == 0) {
        FrequencyPair f;
        f.w_minus = p.m.omega_minus;
        f.w_plus = p.m.omega_plus;
        regime_used = "nonresonant";
        return f;
    }
    std::string regime = c.regime;
    if (regime == "auto") {
        const PointRegime pr = classify_regime(p.m.sigma, c.thresholds);
        if (pr == PointRegime::Rejected)
            throw Rejection("neither the nonresonant nor the resonant condition holds for these thresholds");
        regime = pr == PointRegime::Nonresonant ? "nonresonant" : "resonant";
    }
    regime_used = regime;
    if (regime == "nonresonant") {
        if (!have_amp) throw ConfigError("nonresonant frequencies need amplitudes");
        FrequencyPair f = frequencies_nonresonant(p.q, p.m, *c.a_minus, *c.a_plus);
        return f;
    }
    if (p.q.degenerate_coupling()) {
        // chi = 0: the resonant monomial vanishes and the truncated resonant
        // Hamiltonian is the nonresonant one, integrable in the mode actions.
        if (!have_amp) throw Rejection("resonant monomial vanishes (chi = 0): give amplitudes");
        FrequencyPair f = frequencies_nonresonant(p.q, p.m, *c.a_minus, *c.a_plus);
        f.regime = std::abs(p.m.sigma) < FreqOptions{}.tau_sigma_rel * p.m.omega_minus ? Regime::ResonantExact
                                                                                      : Regime::ResonantGeneric;
        return f;
    }
    FreqOptions fo;
    fo.form = c.form;
    if (have_amp) {
        const ChartEntry ce =
            amplitudes_to_chart(*c.a_minus, *c.a_plus, p.q, p.m, c.thresholds.tau_zone, c.thresholds.tau_E);
        FrequencyPair f = frequencies_resonant(ce.params, ce.E, ce.region, p.m, p.q, fo);
        f.a_minus = *c.a_minus;
        f.a_plus = *c.a_plus;
        return f;
    }
    if (!c.E || !c.I2) throw ConfigError("resonant frequencies need amplitudes or state {E, I2}");
    const EffectiveParams ep = effective_params(p.q, p.m, *c.I2);
    const PortraitSummary s = portrait_summary(ep, c.thresholds.tau_zone);
    if (is_degenerate(s.zone)) throw Rejection(std::string("degenerate zone ") + to_string(s.zone));
    check_noncritical(s, *c.E, c.thresholds.tau_E < 0 ? default_tau_E(s) : c.thresholds.tau_E);
    Region reg = Region::I;
    if (c.region) {
        reg = *c.region;
        const RegionInfo* ri = s.find(reg);
        if (!ri || !(*c.E > ri->e_lo && *c.E < ri->e_hi))
            throw Rejection("energy does not lie in the requested region");
    } else {
        int hits = 0;
        for (const auto& ri : s.regions)
            if (*c.E > ri.e_lo && *c.E < ri.e_hi) {
                reg = ri.region;
                ++hits;
            }
        if (hits != 1) throw Rejection(hits == 0 ? "energy lies in no region" : "energy is ambiguous: give state.region");
    }
    return frequencies_resonant(ep, *c.E, reg, p.m, p.q, fo);
}

int cmd_freqs(const RunConfig& c) {
    const Pipeline p = pipeline(c);
    std::string regime;
    const FrequencyPair f = compute_freqs(c, p, regime);
    json r = {{"modal", modal_json(p.m)}, {"frequencies", freq_json(f)}};
    if (regime == "nonresonant" && c.a_minus && p.sys.cubic_v == 0) {
        const auto [wm, wp] = nonresonant_formula_sl1(p.m, p.sys.cubic_y, *c.a_minus, *c.a_plus);
        r["formula_sl1"] = {{"w_minus", wm}, {"w_plus", wp}};
    }
    emit(c, "freqs", r);
    return 0;
}

int cmd_bandgap(const RunConfig& c) {
    const SystemSpec& ss = need_system(c);
    if (ss.kind != SystemSpec::Kind::Honeycomb) throw ConfigError("bandgap needs a honeycomb system");
    if (!c.a_minus) throw ConfigError("bandgap needs amplitudes");
    SweepSpec sp;
    sp.base = ss.honeycomb;
    sp.a_minus = *c.a_minus;
    sp.a_plus = *c.a_plus;
    sp.points = c.sweep.points;
    sp.th = c.thresholds;
    sp.fo.form = c.form;
    sp.threads = c.threads;
    sp.gamma_offset = c.sweep.gamma_offset;
    const auto pts = dispersion_sweep(sp);
    if (!c.out_dir.empty()) {
        fs::create_directories(c.out_dir);
        auto f = open_out(fs::path(c.out_dir) / "bandgap_sweep.csv");
        f << "s,k1,k2,w_minus_lin,w_plus_lin,w_minus_nl,w_plus_nl,regime,zone\n";
        for (const auto& d : pts)
            f << d.s << ',' << d.k1 << ',' << d.k2 << ',' << d.w_minus_lin << ',' << d.w_plus_lin << ','
              << d.w_nl.w_minus << ',' << d.w_nl.w_plus << ',' << to_string(d.regime) << ','
              << (d.zone ? to_string(*d.zone) : "") << '\n';
    }
    json r;
    int rc = 0;
    try {
        const BandgapReport br = bandgap_report(sp, pts);
        r["report"] = {{"acoustic_max_lin", extremum_json(br.acoustic_max_lin)},
                       {"optical_min_lin", extremum_json(br.optical_min_lin)},
                       {"acoustic_max_nl", extremum_json(br.acoustic_max_nl)},
                       {"optical_min_nl", extremum_json(br.optical_min_nl)},
                       {"width_lin", br.width_lin},
                       {"width_nl", br.width_nl},
                       {"pct_increment", std::isfinite(br.pct_increment) ? json(br.pct_increment) : json(nullptr)},
                       {"gap_closed", br.gap_closed},
                       {"regime_at_X", to_string(br.regime_at_X)},
                       {"case_tag", br.case_tag},
                       {"rejected_points", br.rejected_points}};
    } catch (const Rejection& e) {
        r["report"] = nullptr;
        r["error"] = e.what();
        rc = 1;
    }
    json flags = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].regime == PointRegime::Rejected) flags.push_back({{"index", i}, {"s", pts[i].s}, {"note", pts[i].note}});
    r["rejected"] = flags;
    if (c.sweep.curves) {
        const ResonantCurves rcv = resonant_curves(sp.base, c.sweep.grid, c.sweep.boundary_samples, c.threads);
        r["resonant_curves"] = {{"intersections", rcv.intersections}, {"boundary_s", rcv.boundary_s},
                                {"segments", rcv.segments.size()}};
        if (!c.out_dir.empty()) {
            auto f = open_out(fs::path(c.out_dir) / "resonant_curves.csv");
            f << "k1_a,k2_a,k1_b,k2_b\n";
            for (const auto& sg : rcv.segments) f << sg.x0 << ',' << sg.y0 << ',' << sg.x1 << ',' << sg.y1 << '\n';
        }
    }
    if (c.sweep.curve_R) {
        const auto& R = *c.sweep.curve_R;
        const auto segs = curve_R(sp.base, R[0], R[1], R[2], R[3], c.sweep.grid);
        r["curve_R_segments"] = segs.size();
        if (!c.out_dir.empty()) {
            auto f = open_out(fs::path(c.out_dir) / "curve_R.csv");
            f << "Mtilde_a,Ktilde_a,Mtilde_b,Ktilde_b\n";
            for (const auto& sg : segs) f << sg.x0 << ',' << sg.y0 << ',' << sg.x1 << ',' << sg.y1 << '\n';
        }
    }
    emit(c, "bandgap", r);
    return rc;
}

json check(const std::string& name, double analytic, double measured, double tol, bool relative) {
    const double err = relative ? std::abs(measured - analytic) / std::abs(analytic) : std::abs(measured - analytic);
    return {{"name", name}, {"analytic", analytic}, {"measured", measured},
            {relative ? "rel_err" : "abs_err", err}, {"tol", tol}, {"pass", err < tol}};
}

int cmd_verify(const RunConfig& c) {
    const Pipeline p = pipeline(c);
    if (!c.a_minus) throw ConfigError("verify needs amplitudes");
    std::string regime;
    const FrequencyPair f = compute_freqs(c, p, regime);
    json checks = json::array();

    const double dt = c.verify.dt_fraction * default_exact_dt(p.m);
    const double T = c.verify.periods * 2.0 * pi / p.m.omega_minus;
    ExactRunOptions eo;
    eo.scheme = c.verify.scheme;
    const Trajectory tr = integrate_exact(p.sys, p.m, {*c.a_minus, *c.a_plus, 0.0, 0.0}, T, dt, eo);
    const EnergyStats es = energy_stats(tr);
    checks.push_back({{"name", "energy_secular_drift"}, {"measured", es.secular_drift},
                      {"max_rel_deviation", es.max_rel_deviation}, {"tol", c.verify.drift_tol},
                      {"pass", es.secular_drift < c.verify.drift_tol}});

    const double eps = std::max(*c.a_minus, *c.a_plus);
    const double tol = std::max(c.verify.tol_abs, c.verify.calib_C * std::pow(eps, 4));
    std::vector<double> s1, s2;
    s1.reserve(tr.x.size());
    s2.reserve(tr.x.size());
    for (const auto& x : tr.x) {
        s1.push_back(x[0]);
        s2.push_back(x[1]);
    }
    const auto band = [&](double w) { return std::max(0.05 * w, 20.0 * 2.0 * pi / T); };
    if (*c.a_minus > 0) {
        const Spectrum sp1 = extract_frequencies(s1, dt, 6, 20.0);
        const SpectralPeak pk = peak_near(sp1, f.w_minus - band(f.w_minus), f.w_minus + band(f.w_minus));
        checks.push_back(check("acoustic_frequency", f.w_minus, pk.omega, tol, false));
    }
    if (*c.a_plus > 0) {
        const Spectrum sp2 = extract_frequencies(s2, dt, 6, 20.0);
        const SpectralPeak pk = peak_near(sp2, f.w_plus - band(f.w_plus), f.w_plus + band(f.w_plus));
        checks.push_back(check("optical_frequency", f.w_plus, pk.omega, tol, false));
    }
    if (regime == "resonant" && !p.q.degenerate_coupling()) {
        const ChartEntry ce = amplitudes_to_chart(*c.a_minus, *c.a_plus, p.q, p.m, c.thresholds.tau_zone,
                                                  c.thresholds.tau_E);
        const ReducedSystem rs = reduced_system(p.q, p.m, ce.I2);
        const double J1 = 0.5 * p.m.omega_plus * *c.a_plus * *c.a_plus;
        const PeriodResult pr = reduced_period(rs, J1, 0.0, 1e6 * 2.0 * pi / std::abs(f.omega1));
        checks.push_back(check("reduced_period", 2.0 * pi / std::abs(f.omega1), pr.period, c.verify.period_rel_tol, true));
        checks.push_back(check("reduced_mean_acoustic_rate", f.w_minus, pr.mean_phi1_rate, c.verify.period_rel_tol, true));
        checks.push_back({{"name", "reduced_energy"}, {"measured", pr.energy_rel_error}, {"tol", 1e-10},
                          {"pass", pr.energy_rel_error < 1e-10}});
        checks.push_back({{"name", "orbit_wraps"}, {"measured", pr.wraps},
                          {"region_wraps", ce.region == Region::II || ce.region == Region::IV},
                          {"pass", pr.wraps == (ce.region == Region::II || ce.region == Region::IV)}});
    }
    bool all = true;
    for (const auto& ch : checks) all = all && ch["pass"].get<bool>();
    emit(c, "verify", {{"modal", modal_json(p.m)}, {"regime", regime}, {"predicted", freq_json(f)},
                       {"tolerance", tol}, {"checks", checks}, {"all_pass", all},
                       {"exact_run", {{"dt", dt}, {"T", T}, {"steps", tr.steps}, {"scheme", tr.scheme}}}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3:1 resonant normal form, phase portraits, nonlinear frequencies and bandgaps"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Cli cli;
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"decompose", "simultaneous diagonalisation: modal frequencies, mode shapes, detuning"},
        {"coeffs", "quartic coefficients and effective parameters"},
        {"classify", "zone of (a1, a2)"},
        {"portrait", "critical points, regions and level curves"},
        {"roots", "roots of the level-set quartic"},
        {"freqs", "nonlinear frequencies"},
        {"bandgap", "dispersion sweep along the Brillouin boundary and bandgap report"},
        {"verify", "analytic frequencies against direct integration"}};
    for (const auto& [name, desc] : cmds) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", cli.config_path, "config file (JSON)")->required();
        sub->add_option("--out", cli.out_dir, "output directory");
        sub->add_option("--grid", cli.grid, "grid resolution for contour extraction")->check(CLI::PositiveNumber);
        sub->add_option("--threads", cli.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--format", cli.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg = load_config(cli.config_path);
        if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
        if (cli.grid > 0) cfg.sweep.grid = cli.grid;
        if (cli.threads > 0) cfg.threads = cli.threads;
        if (!cli.format.empty()) cfg.format = cli.format;
        std::cout.precision(17);
        if (command == "decompose") return cmd_decompose(cfg);
        if (command == "coeffs") return cmd_coeffs(cfg);
        if (command == "classify") return cmd_classify(cfg);
        if (command == "portrait") return cmd_portrait(cfg);
        if (command == "roots") return cmd_roots(cfg);
        if (command == "freqs") return cmd_freqs(cfg);
        if (command == "bandgap") return cmd_bandgap(cfg);
        if (command == "verify") return cmd_verify(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Rejection& e) {
        std::cerr << "rejected: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
