#pragma once
#include "cvint/estimation.hpp"
#include <vector>

namespace cvint {

struct ObservationParams {
    double wavelength_m = 800e-9;
    double bandwidth_m = 0.1e-9;
    double telescope_diameter_m = 6.0;
    double magnitude = -5.0;
};

enum class SourceTopology { midpoint, at_telescope_a };

struct NetworkParams {
    double loss_db_per_km = 0.2;
    double baseline_km = 0.0;
    SourceTopology source_topology = SourceTopology::midpoint;
    double base_rate_hz = 150e9; // repeater repetition rate at the reference distance
    double reference_km = 10.0;
    double poly_order = 2.0;     // rate decay exponent beyond the reference
};

// calibrated so magnitude -5 maps to 0.4 at the reference telescope/bandwidth
double epsilon_from_magnitude(const ObservationParams& obs);

// c * dlambda / lambda^2, times a calibration factor
double temporal_mode_rate(const ObservationParams& obs, double calibration = 1.0);

struct SqueezingThreshold {
    double r_eff;
    double squeezing_db;
};

// threshold where the added teleportation noise equals the source strength
SqueezingThreshold threshold_squeezing(double epsilon);

double transmissivity_from_baseline(const NetworkParams& net); // amplitude T

enum class BaselineScheme { cv_no_repeater, dv_no_repeater };

struct CurvePoint {
    double baseline_km;
    double value;
};

std::vector<CurvePoint> fi_vs_baseline_curve(const CoherenceParams& p, double r,
                                             NetworkParams net, BaselineScheme scheme,
                                             const std::vector<double>& baselines_km);

struct RatioPoint {
    double baseline_km;
    double ratio_direct;
    double ratio_cv;
};

std::vector<RatioPoint> fi_ratio_vs_distance(const CoherenceParams& p, double r_eff,
                                             NetworkParams net, double mode_rate_hz,
                                             const std::vector<double>& baselines_km);

struct TableRow {
    double magnitude;
    double epsilon;
    double squeezing_db;
    double r_eff;
};

std::vector<TableRow> squeezing_threshold_table();

} // namespace cvint
