#include "cvint/link_budget.hpp"
#include "cvint/teleport.hpp"
#include "cvint/fock.hpp"
#include <cmath>
#include <stdexcept>

namespace cvint {

double epsilon_from_magnitude(const ObservationParams& obs) {
    if (obs.telescope_diameter_m <= 0 || obs.bandwidth_m <= 0)
        throw std::invalid_argument("telescope diameter and bandwidth must be positive");
    double d = obs.telescope_diameter_m / 6.0;
    double bw = obs.bandwidth_m / 0.1e-9;
    return 0.4 * std::pow(10.0, -(obs.magnitude + 5.0) / 2.5) * d * d * bw;
}

double temporal_mode_rate(const ObservationParams& obs, double calibration) {
    constexpr double c = 299792458.0;
    return calibration * c * obs.bandwidth_m / (obs.wavelength_m * obs.wavelength_m);
}

SqueezingThreshold threshold_squeezing(double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (epsilon > 2.0) throw std::invalid_argument("epsilon above the threshold ceiling");
    SqueezingThreshold t;
    t.r_eff = 0.5 * std::log(2.0 / epsilon);
    t.squeezing_db = 10.0 * std::log10(2.0 / epsilon);
    return t;
}

double transmissivity_from_baseline(const NetworkParams& net) {
    double leg = net.source_topology == SourceTopology::midpoint ? net.baseline_km / 2.0
                                                                 : net.baseline_km;
    double power = std::pow(10.0, -net.loss_db_per_km * leg / 10.0);
    return std::sqrt(power);
}

std::vector<CurvePoint> fi_vs_baseline_curve(const CoherenceParams& p, double r,
                                             NetworkParams net, BaselineScheme scheme,
                                             const std::vector<double>& baselines_km) {
    std::vector<CurvePoint> out;
    out.reserve(baselines_km.size());
    for (double L : baselines_km) {
        net.baseline_km = L;
        double v = 0.0;
        if (scheme == BaselineScheme::cv_no_repeater) {
            LinkParams link = effective_squeezing(r, transmissivity_from_baseline(net));
            v = qfi_closed_form(p, link.y).f_theta_theta;
        } else {
            // photons meet at the midpoint, so the pair survives with the full-path power loss
            double eta = std::pow(10.0, -net.loss_db_per_km * L / 10.0);
            v = dv_scheme_fi(p).f_theta_theta * eta;
        }
        out.push_back({L, v});
    }
    return out;
}

std::vector<RatioPoint> fi_ratio_vs_distance(const CoherenceParams& p, double r_eff,
                                             NetworkParams net, double mode_rate_hz,
                                             const std::vector<double>& baselines_km) {
    if (mode_rate_hz <= 0) throw std::invalid_argument("mode rate must be positive");
    double f0 = qfi_closed_form(p, 0.0).f_theta_theta;
    if (f0 <= 0) throw std::invalid_argument("reference information vanishes");
    double y_link = 2.0 * std::exp(-2.0 * r_eff);
    double f_link = qfi_closed_form(p, y_link).f_theta_theta;
    std::vector<RatioPoint> out;
    out.reserve(baselines_km.size());
    for (double L : baselines_km) {
        net.baseline_km = L;
        double leg = net.source_topology == SourceTopology::midpoint ? L / 2.0 : L;
        double eta = std::pow(10.0, -net.loss_db_per_km * leg / 10.0);
        CoherenceParams pd = p;
        pd.epsilon = p.epsilon * eta;
        double rd = qfi_closed_form(pd, 0.0).f_theta_theta / f0;

        double rate = net.base_rate_hz;
        if (L > net.reference_km && L > 0)
            rate = net.base_rate_hz * std::pow(net.reference_km / L, net.poly_order);
        double duty = std::min(1.0, rate / mode_rate_hz);
        double rc = (f_link / f0) * duty;
        out.push_back({L, rd, rc});
    }
    return out;
}

std::vector<TableRow> squeezing_threshold_table() {
    ObservationParams obs;
    std::vector<TableRow> rows;
    for (double m : {-5.0, -2.5, 0.0, 2.5, 5.0, 7.5}) {
        obs.magnitude = m;
        double eps = epsilon_from_magnitude(obs);
        auto t = threshold_squeezing(eps);
        rows.push_back({m, eps, t.squeezing_db, t.r_eff});
    }
    return rows;
}

} // namespace cvint
