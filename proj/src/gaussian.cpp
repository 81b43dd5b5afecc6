#include "cvint/gaussian.hpp"
#include <cmath>
#include <stdexcept>

namespace cvint {

void validate(const CoherenceParams& p) {
    if (p.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    if (p.g_abs < 0.0 || p.g_abs > 1.0) throw std::invalid_argument("|g| must be in [0,1]");
}

GaussianState vacuum_state(int n_modes) {
    GaussianState st;
    st.mean = Eigen::VectorXd::Zero(2 * n_modes);
    st.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return st;
}

GaussianState stellar_state(const CoherenceParams& p) {
    validate(p);
    const double e = p.epsilon, g = p.g_abs;
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    GaussianState st = vacuum_state(2);
    Eigen::MatrixXd V(4, 4);
    V << 1 + e,      0, e * g * c, -e * g * s,
             0,  1 + e, e * g * s,  e * g * c,
     e * g * c, e * g * s,  1 + e,          0,
    -e * g * s, e * g * c,      0,      1 + e;
    st.cov = 0.5 * V;
    return st;
}

GaussianState ideal_tms_state(double r) {
    if (r < 0.0) throw std::invalid_argument("squeezing parameter must be >= 0");
    const double ch = std::cosh(2 * r) / 2, sh = std::sinh(2 * r) / 2;
    GaussianState st = vacuum_state(2);
    Eigen::MatrixXd V(4, 4);
    V <<  ch,   0, -sh,   0,
           0,  ch,   0,  sh,
         -sh,   0,  ch,   0,
           0,  sh,   0,  ch;
    st.cov = V;
    return st;
}

GaussianState lossy_tms_state(double r, double T) {
    if (r < 0.0) throw std::invalid_argument("squeezing parameter must be >= 0");
    if (T < 0.0 || T > 1.0) throw std::invalid_argument("transmissivity must be in [0,1]");
    // invert the Wigner-exponent quadratic form
    // C (q3^2+p3^2+q4^2+p4^2) + 2 S (q3 q4 - p3 p4), cov = (1/2) M^{-1}
    const double sh = std::sinh(r);
    const double N = 1 - 4 * T * T * (-1 + T * T) * sh * sh;
    const double C = (1 + T * T * (std::cosh(2 * r) - 1)) / N;
    const double S = T * T * std::sinh(2 * r) / N;
    Eigen::MatrixXd M(4, 4);
    M << C, 0, S, 0,
         0, C, 0, -S,
         S, 0, C, 0,
         0, -S, 0, C;
    GaussianState st = vacuum_state(2);
    st.cov = 0.5 * M.inverse();
    return st;
}

Eigen::MatrixXd beamsplitter_symplectic(int n_modes, int mode_i, int mode_j,
                                        double transmittance, double phase) {
    if (mode_i == mode_j || mode_i < 0 || mode_j < 0 ||
        mode_i >= n_modes || mode_j >= n_modes)
        throw std::out_of_range("beamsplitter mode indices");
    const double t = transmittance, s = std::sqrt(1.0 - t * t);
    const double c = std::cos(phase), sn = std::sin(phase);
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const int i = 2 * mode_i, j = 2 * mode_j;
    Eigen::Matrix2d rot, rotm;
    rot << c, -sn, sn, c;   // multiplication of a by e^{i phase}
    rotm << c, sn, -sn, c;  // e^{-i phase}
    S.block<2, 2>(i, i) = t * Eigen::Matrix2d::Identity();
    S.block<2, 2>(i, j) = s * rot;
    S.block<2, 2>(j, i) = -s * rotm;
    S.block<2, 2>(j, j) = t * Eigen::Matrix2d::Identity();
    return S;
}

static GaussianState apply_symplectic(const GaussianState& st, const Eigen::MatrixXd& S) {
    GaussianState out;
    out.mean = S * st.mean;
    out.cov = S * st.cov * S.transpose();
    return out;
}

GaussianState apply_beamsplitter(const GaussianState& st, int mode_i, int mode_j,
                                 double transmittance, double phase) {
    return apply_symplectic(st, beamsplitter_symplectic(st.n_modes(), mode_i, mode_j,
                                                        transmittance, phase));
}

GaussianState apply_phase(const GaussianState& st, int mode, double delta) {
    if (mode < 0 || mode >= st.n_modes()) throw std::out_of_range("phase mode index");
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(st.mean.size(), st.mean.size());
    const double c = std::cos(delta), s = std::sin(delta);
    S.block<2, 2>(2 * mode, 2 * mode) << c, -s, s, c;
    return apply_symplectic(st, S);
}

GaussianState apply_displacement(const GaussianState& st, int mode, double dq, double dp) {
    if (mode < 0 || mode >= st.n_modes()) throw std::out_of_range("displacement mode index");
    GaussianState out = st;
    out.mean(2 * mode) += dq;
    out.mean(2 * mode + 1) += dp;
    return out;
}

GaussianState apply_loss(const GaussianState& st, int mode, double eta) {
    if (mode < 0 || mode >= st.n_modes()) throw std::out_of_range("loss mode index");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in [0,1]");
    const int k = 2 * mode, n = static_cast<int>(st.mean.size());
    const double rt = std::sqrt(eta);
    GaussianState out = st;
    out.mean.segment<2>(k) *= rt;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const bool ia = (a == k || a == k + 1), ib = (b == k || b == k + 1);
            if (ia && ib) out.cov(a, b) = eta * st.cov(a, b);
            else if (ia || ib) out.cov(a, b) = rt * st.cov(a, b);
        }
    out.cov(k, k) += (1 - eta) * 0.5;
    out.cov(k + 1, k + 1) += (1 - eta) * 0.5;
    return out;
}

std::pair<GaussianState, HomodyneOutcomePdf>
condition_on_homodyne(const GaussianState& st, int mode, Quadrature quad, double outcome) {
    const int n = st.n_modes();
    if (mode < 0 || mode >= n) throw std::out_of_range("homodyne mode index");
    const int b = 2 * mode + (quad == Quadrature::p ? 1 : 0);
    std::vector<int> keep;
    for (int m = 0; m < n; ++m) {
        if (m == mode) continue;
        keep.push_back(2 * m);
        keep.push_back(2 * m + 1);
    }
    const int na = static_cast<int>(keep.size());
    Eigen::VectorXd mu_a(na), cross(na);
    Eigen::MatrixXd cov_a(na, na);
    for (int i = 0; i < na; ++i) {
        mu_a(i) = st.mean(keep[i]);
        cross(i) = st.cov(keep[i], b);
        for (int j = 0; j < na; ++j) cov_a(i, j) = st.cov(keep[i], keep[j]);
    }
    const double vb = st.cov(b, b);
    GaussianState post;
    post.mean = mu_a + cross * ((outcome - st.mean(b)) / vb);
    post.cov = cov_a - (cross * cross.transpose()) / vb;
    post.cov = 0.5 * (post.cov + post.cov.transpose().eval());
    return {post, HomodyneOutcomePdf{st.mean(b), vb}};
}

static Eigen::MatrixXcd ladder_change_of_basis(int n_modes) {
    using namespace std::complex_literals;
    const double rt = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        W(2 * m, 2 * m) = rt;
        W(2 * m, 2 * m + 1) = 1i * rt;
        W(2 * m + 1, 2 * m) = rt;
        W(2 * m + 1, 2 * m + 1) = -1i * rt;
    }
    return W;
}

LadderCovariance quad_to_ladder(const GaussianState& st) {
    const int n = st.n_modes();
    const Eigen::MatrixXcd W = ladder_change_of_basis(n);
    LadderCovariance lc;
    lc.sigma = W * st.cov.cast<std::complex<double>>() * W.transpose();
    lc.omega = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int m = 0; m < n; ++m) {
        lc.omega(2 * m, 2 * m + 1) = 1.0;
        lc.omega(2 * m + 1, 2 * m) = -1.0;
    }
    return lc;
}

GaussianState ladder_to_quad(const LadderCovariance& lc) {
    const int n = static_cast<int>(lc.sigma.rows()) / 2;
    const Eigen::MatrixXcd W = ladder_change_of_basis(n);
    const Eigen::MatrixXcd Winv = W.adjoint(); // W is unitary
    Eigen::MatrixXcd Vc = Winv * lc.sigma * Winv.transpose();
    GaussianState st;
    st.mean = Eigen::VectorXd::Zero(2 * n);
    st.cov = Vc.real();
    st.cov = 0.5 * (st.cov + st.cov.transpose().eval());
    return st;
}

Eigen::MatrixXd quad_symplectic_form(int n_modes) {
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        O(2 * m, 2 * m + 1) = 1.0;
        O(2 * m + 1, 2 * m) = -1.0;
    }
    return O;
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianState& st) {
    const int n = st.n_modes();
    // singular values of V^{1/2} Omega V^{1/2} come in pairs (nu_k, nu_k)
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.cov);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    Eigen::MatrixXd A = root * quad_symplectic_form(n) * root;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    Eigen::VectorXd s = svd.singularValues(); // descending, paired
    Eigen::VectorXd nu(n);
    for (int k = 0; k < n; ++k) nu(k) = 0.5 * (s(2 * k) + s(2 * k + 1));
    return nu.reverse(); // ascending
}

bool is_physical(const GaussianState& st, double tol) {
    if ((st.cov - st.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
    return symplectic_eigenvalues(st).minCoeff() >= 0.5 - tol;
}

} // namespace cvint
