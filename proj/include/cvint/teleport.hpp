#pragma once
#include "cvint/gaussian.hpp"
#include <cstdint>

namespace cvint {

struct LinkParams {
    double r;     // source squeezing
    double T;     // amplitude transmissivity
    double r_eff; // effective squeezing, e^{-2 r_eff} = 1 - T^2 + e^{-2r} T^2
    double y;     // added quadrature noise, y = 2 e^{-2 r_eff}
};

LinkParams effective_squeezing(double r, double T);
LinkParams link_from_r_eff(double r_eff); // lossless link realizing the same y

// closed-form output: stellar covariance plus diag(y, y, 0, 0),
// mode order (teleported, untouched telescope-B mode)
GaussianState teleported_state(const CoherenceParams& p, const LinkParams& link);

struct TeleportSampleReport {
    std::uint64_t n_samples;
    std::uint64_t seed;
    Eigen::Vector4d empirical_mean;
    Eigen::Matrix4d empirical_cov;
    Eigen::Matrix4d target_cov;
    Eigen::Matrix4d stderr_cov;   // per-entry standard error of empirical_cov
    Eigen::Vector4d stderr_mean;
    double max_abs_deviation;     // max |empirical_cov - target_cov|
};

enum class Execution { serial, parallel };

// samples the full protocol: joint phase-space draw (stellar x resource pair),
// balanced mixing of the telescope-A mode with the near resource mode, readout
// of the two homodyne quadratures, feedforward displacement on the far mode
TeleportSampleReport simulate_teleportation(const CoherenceParams& p, double r, double T,
                                            std::uint64_t n_samples, std::uint64_t seed,
                                            Execution exec = Execution::parallel);

// deterministic composition of the same pipeline (no sampling); used to pin
// the feedforward sign convention against teleported_state
Eigen::Matrix4d pipeline_output_cov(const CoherenceParams& p, double r, double T);

} // namespace cvint
