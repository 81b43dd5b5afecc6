#pragma once
#include "cvint/gaussian.hpp"
#include <complex>
#include <utility>

namespace cvint {

enum class FiKind { quantum, pnr_measurement, heterodyne, dv_scheme, intensity_difference };

// parameter order is (theta, |g|) everywhere
struct FisherMatrix {
    double f_theta_theta;
    double f_g_g;
    double f_theta_g;
    FiKind kind;
};

// ladder-basis covariance of the teleported pair and its parameter derivatives,
// ordering (a1, a1*, a2, a2*) with mode 1 the teleported one
Eigen::Matrix4cd teleported_ladder_sigma(const CoherenceParams& p, double y);
Eigen::Matrix4cd teleported_ladder_dtheta(const CoherenceParams& p);
Eigen::Matrix4cd teleported_ladder_dg(const CoherenceParams& p);

// quantum Fisher information of a zero-mean Gaussian state from its ladder
// covariance and derivatives; the kernel (Sigma kron Sigma + Omega kron Omega / 4)
// is inverted as a 16x16 map with pseudo-inverse rank tolerance 1e-12
FisherMatrix qfi_general(const Eigen::Matrix4cd& sigma,
                         const Eigen::Matrix4cd& dsigma_dtheta,
                         const Eigen::Matrix4cd& dsigma_dg);

FisherMatrix qfi_closed_form(const CoherenceParams& p, double y);

// leading order in epsilon: (eps |g|^2, eps / (1 - |g|^2))
std::pair<double, double> qfi_weak_limit(const CoherenceParams& p);

struct SldCoefficients {
    double a;
    std::complex<double> b; // phase -theta
    double c;
    double d;
    double e;
    std::complex<double> p; // phase-estimation coupling, phase theta + pi/2
    double delta_opt_g;     // theta
    double delta_opt_theta; // theta + pi/2
};

SldCoefficients sld_coefficients(const CoherenceParams& p, double y);

// classical FI of photon counting behind a delta-delayed balanced mix,
// leading order in epsilon
FisherMatrix fi_pnr_leading_order(const CoherenceParams& p, double delta);

struct IntensityDifferenceStats {
    double mean;     // |g| cos(theta - delta)
    double variance; // per temporal mode, for the epsilon-normalized difference
};

IntensityDifferenceStats intensity_difference_stats(const CoherenceParams& p,
                                                    double delta, double y);

// classical FI of dual-quadrature (heterodyne) detection at both telescopes
FisherMatrix heterodyne_fi(const CoherenceParams& p);

} // namespace cvint
