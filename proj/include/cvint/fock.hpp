#pragma once
#include "cvint/estimation.hpp"
#include "cvint/gaussian.hpp"

namespace cvint {

// dense two-mode truncated-Fock operator; basis |m,n>, index m*(cutoff+1)+n
struct FockOperator {
    int cutoff;
    Eigen::MatrixXcd matrix;
    double tail_mass; // 1 - trace for density operators
};

// exact density matrix of a zero-mean two-mode Gaussian state whose
// covariance admits a coherent-state mixture representation (cov - I/2 psd);
// matrix elements from closed-form Gaussian moments, no quadrature
FockOperator gaussian_to_fock(const GaussianState& st, int cutoff);

// per-mode geometric tail union bound for the truncation error
double thermal_tail_bound(const GaussianState& st, int cutoff);
int default_cutoff(const GaussianState& st, double tail_budget = 1e-8, int max_cutoff = 20);

Eigen::MatrixXcd annihilation_op(int cutoff);                  // single mode
Eigen::MatrixXcd mode1_annihilation(int cutoff);               // a x I
Eigen::MatrixXcd mode2_annihilation(int cutoff);               // I x a

struct PnrDistribution {
    Eigen::MatrixXd probs; // probs(m, n)
    double delta;
    CoherenceParams params;
    double y;
    int cutoff;
    double tail_mass;
};

// photon counting on the two outputs of a balanced mix of the teleported mode
// with the phase-shifted telescope-B mode
PnrDistribution pnr_distribution(const CoherenceParams& p, double y, double delta, int cutoff);

// classical FI of the counting distribution by central finite differences
FisherMatrix classical_fi_pnr(const CoherenceParams& p, double y, double delta, int cutoff,
                              double fd_step = 1e-5, double tail_budget = 1e-6,
                              double p_floor = 1e-15);

enum class SldWhich { theta, g };

struct SldReport {
    double residual;   // relative Frobenius residual of d rho = (L rho + rho L)/2
    double tr_rho_l;   // should vanish
    double tr_rho_l2;  // should match the closed-form Fisher diagonal
    double qfi_diagonal;
    double tail_mass;
};

SldReport verify_sld(const CoherenceParams& p, double y, int cutoff, SldWhich which,
                     double fd_step = 1e-5);

// single-photon comparison scheme: source pair truncated to vacuum/one-photon,
// shared entangled pair, Bell analysis succeeding half the time, binary
// interference with visibility |g|; FI from the discrete outcome distribution
FisherMatrix dv_scheme_fi(const CoherenceParams& p);
FisherMatrix dv_scheme_fi(const CoherenceParams& p, double delta);

} // namespace cvint
