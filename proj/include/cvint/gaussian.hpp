#pragma once
#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace cvint {

// Quadrature ordering is interleaved (q1,p1,q2,p2,...), hbar = 1,
// vacuum variance 1/2 per quadrature.
struct GaussianState {
    Eigen::VectorXd mean; // length 2n
    Eigen::MatrixXd cov;  // 2n x 2n, symmetric
    int n_modes() const { return static_cast<int>(mean.size()) / 2; }
};

struct CoherenceParams {
    double epsilon; // mean photon number per temporal mode
    double g_abs;   // |g| in [0,1]
    double theta;   // phase of the coherence function
};

// ladder ordering (a1, a1*, a2, a2*, ...) with Sigma_ij = (1/2)<{xi_i, xi_j}>
struct LadderCovariance {
    Eigen::MatrixXcd sigma;
    Eigen::MatrixXcd omega; // block diag of [[0,1],[-1,0]]
};

void validate(const CoherenceParams& p);

GaussianState vacuum_state(int n_modes);
GaussianState stellar_state(const CoherenceParams& p);

// two-mode squeezed vacuum sent through equal loss on both arms;
// T is the amplitude transmission coefficient, power transmissivity T^2
GaussianState lossy_tms_state(double r, double T);
GaussianState ideal_tms_state(double r);

// mode map a_i' = t a_i + s e^{i phase} a_j, a_j' = -s e^{-i phase} a_i + t a_j,
// s = sqrt(1 - t^2); balanced case t = 1/sqrt(2), phase 0
GaussianState apply_beamsplitter(const GaussianState& st, int mode_i, int mode_j,
                                 double transmittance, double phase);
GaussianState apply_phase(const GaussianState& st, int mode, double delta);
GaussianState apply_displacement(const GaussianState& st, int mode, double dq, double dp);
GaussianState apply_loss(const GaussianState& st, int mode, double eta);

// symplectic matrix of the beamsplitter embedded in 2n dims (exposed for tests)
Eigen::MatrixXd beamsplitter_symplectic(int n_modes, int mode_i, int mode_j,
                                        double transmittance, double phase);

enum class Quadrature { q, p };

struct HomodyneOutcomePdf {
    double mean;
    double variance;
};

// Gaussian conditioning on one measured quadrature; the measured mode is
// removed from the state (its conjugate quadrature is traced out)
std::pair<GaussianState, HomodyneOutcomePdf>
condition_on_homodyne(const GaussianState& st, int mode, Quadrature quad, double outcome);

LadderCovariance quad_to_ladder(const GaussianState& st);
GaussianState ladder_to_quad(const LadderCovariance& lc);

Eigen::VectorXd symplectic_eigenvalues(const GaussianState& st);
bool is_physical(const GaussianState& st, double tol = 1e-10);

Eigen::MatrixXd quad_symplectic_form(int n_modes); // Omega_q, blocks [[0,1],[-1,0]]

} // namespace cvint
