#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "r31/bandgap.hpp"
#include "r31/freq.hpp"
#include "r31/modal.hpp"
#include "r31/portrait.hpp"
#include "r31/verify.hpp"

namespace r31 {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SystemSpec {
    enum class Kind { Honeycomb, Generic } kind = Kind::Honeycomb;
    HoneycombParams honeycomb;
    std::string point;  // "", "Gamma", "X" or "M" (honeycomb only)
    OscillatorSystem generic;

    OscillatorSystem build() const;
};

struct SweepConfig {
    int points = 600;
    double gamma_offset = 1e-6;
    int grid = 200;
    int boundary_samples = 20000;
    bool curves = true;
    std::optional<std::array<double, 4>> curve_R;  // Mtilde lo/hi, Ktilde lo/hi
};

struct VerifyConfig {
    double periods = 2000;      // length of the exact run in acoustic periods
    double dt_fraction = 0.5;   // dt = dt_fraction * 2 pi / (40 omega_+)
    ExactScheme scheme = ExactScheme::RotationKick;
    double tol_abs = 1e-4;      // spectral tolerance floor
    double calib_C = 2e8;       // C in max(tol_abs, C eps^4); eps = max amplitude, N3 = -1e4
    double period_rel_tol = 1e-4;
    double drift_tol = 1e-8;
};

struct RunConfig {
    std::optional<SystemSpec> system;
    std::optional<double> a1, a2;
    std::vector<double> energies;
    std::optional<double> a_minus, a_plus;
    std::optional<double> E, I2;
    std::optional<Region> region;
    Thresholds thresholds;
    FrequencyForm form = FrequencyForm::ActionConsistent;
    std::string regime = "auto";  // auto | nonresonant | resonant
    SweepConfig sweep;
    VerifyConfig verify;
    int level_points = 512;
    int threads = 1;
    std::string out_dir;
    std::string format = "json";

    nlohmann::json to_json() const;
};

// Validates against the schema (unknown keys, types, positivity); throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
// Accepts either a config document or an emitted result that carries it under "config".
RunConfig load_config(const std::string& path);

Region region_from_string(const std::string& s);

}  // namespace r31
