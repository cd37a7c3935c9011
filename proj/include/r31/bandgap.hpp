#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "r31/freq.hpp"
#include "r31/modal.hpp"

namespace r31 {

struct Thresholds {
    double epsilon = 6.5e-4;
    double C1 = 5e-4;
    double C2 = 2.5e-3;
    double tau_zone = 1e-9;
    double tau_E = -1;  // negative: 1e-9 max(1, |E_sad|)
};

// Gamma -> X -> M -> Gamma, arc-length parameterised.
struct PathPoint {
    double s = 0, k1 = 0, k2 = 0;
};
double path_length();
double path_s_at_X();
PathPoint path_at(double s, double gamma_offset = 1e-6);
std::vector<PathPoint> boundary_path(int n, double gamma_offset = 1e-6);

enum class PointRegime { Nonresonant, Resonant, Rejected };
const char* to_string(PointRegime r);

// nonresonant iff epsilon <= C1 sqrt|sigma|; resonant iff C1 sqrt|sigma| < epsilon <= C2
PointRegime classify_regime(double sigma, const Thresholds& th);

struct DispersionPoint {
    double s = 0, k1 = 0, k2 = 0;
    double sigma = 0;
    double w_minus_lin = 0, w_plus_lin = 0;
    FrequencyPair w_nl;
    PointRegime regime = PointRegime::Rejected;
    std::optional<Zone> zone;
    std::optional<Region> region;
    std::string note;
};

struct SweepSpec {
    HoneycombParams base;  // k1, k2 ignored
    double a_minus = 0, a_plus = 0;
    int points = 600;
    Thresholds th;
    FreqOptions fo;
    int threads = 1;
    double gamma_offset = 1e-6;
};

DispersionPoint dispersion_point(const SweepSpec& spec, double s);
std::vector<DispersionPoint> dispersion_sweep(const SweepSpec& spec);

struct Extremum {
    double value = 0;
    double s = 0, k1 = 0, k2 = 0;
    PointRegime regime = PointRegime::Rejected;
};

struct BandgapReport {
    Extremum acoustic_max_lin, optical_min_lin;
    Extremum acoustic_max_nl, optical_min_nl;
    double width_lin = 0, width_nl = 0;
    double pct_increment = 0;
    bool gap_closed = false;
    PointRegime regime_at_X = PointRegime::Rejected;
    std::string case_tag;  // "i", "ii" or "iii"
    int rejected_points = 0;
};

// Grid extrema refined by golden-section search between neighbouring samples
// of the same regime.
BandgapReport bandgap_report(const SweepSpec& spec, const std::vector<DispersionPoint>& pts);

// sigma(k1,k2) for the honeycomb system.
double honeycomb_sigma(const HoneycombParams& base, double k1, double k2);

struct Segment {
    double x0, y0, x1, y1;
};

// Zero level of a scalar field sampled on a regular grid (values[j][i] at
// (x0 + i dx, y0 + j dy)). NaN samples mark cells to skip.
std::vector<Segment> marching_squares(const std::vector<std::vector<double>>& values, double x0,
                                      double dx, double y0, double dy);

struct ResonantCurves {
    std::vector<Segment> segments;  // sigma = 0 inside the triangle
    std::vector<double> boundary_s;  // arc-length positions of intersections with the boundary
    int intersections = 0;
};

// grid: samples per side of the bounding box; boundary_samples: resolution of
// the sign scan along the boundary path.
ResonantCurves resonant_curves(const HoneycombParams& base, int grid = 200,
                               int boundary_samples = 20000, int threads = 1);

// Zero level of sigma at X over a (Mtilde, Ktilde) rectangle.
std::vector<Segment> curve_R(const HoneycombParams& base, double m_lo, double m_hi, double k_lo,
                             double k_hi, int grid = 200);

// Run f(i) for i in [0,n) on a small worker pool.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

}  // namespace r31
