#include "cvint/fock.hpp"
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cvint {

using cd = std::complex<double>;
using namespace std::complex_literals;

Eigen::MatrixXcd annihilation_op(int cutoff) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    for (int k = 1; k <= cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Eigen::MatrixXcd mode1_annihilation(int cutoff) {
    return kron(annihilation_op(cutoff), Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1));
}

Eigen::MatrixXcd mode2_annihilation(int cutoff) {
    return kron(Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1), annihilation_op(cutoff));
}

double thermal_tail_bound(const GaussianState& st, int cutoff) {
    double bound = 0.0;
    for (int m = 0; m < st.n_modes(); ++m) {
        const double nb = 0.5 * (st.cov(2 * m, 2 * m) + st.cov(2 * m + 1, 2 * m + 1) - 1.0);
        if (nb <= 0.0) continue;
        bound += std::pow(nb / (1.0 + nb), cutoff + 1);
    }
    return bound;
}

int default_cutoff(const GaussianState& st, double tail_budget, int max_cutoff) {
    for (int c = 1; c <= max_cutoff; ++c)
        if (thermal_tail_bound(st, c) <= tail_budget) return c;
    throw std::domain_error("no cutoff within budget; state too hot for the oracle");
}

FockOperator gaussian_to_fock(const GaussianState& st, int cutoff) {
    if (st.n_modes() != 2) throw std::invalid_argument("oracle handles two modes");
    if (st.mean.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("oracle handles zero-mean states");
    const Eigen::Matrix4d Mp = st.cov - 0.5 * Eigen::Matrix4d::Identity();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(Mp);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-9 * scale)
        throw std::domain_error("state has no coherent-mixture representation");
    const Eigen::Matrix4d I4 = Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d Cp = Mp * (I4 + Mp).inverse();
    const double Z = 1.0 / std::sqrt((I4 + Mp).determinant());
    // complex coordinates z = (alpha, conj alpha, beta, conj beta)
    const double rt2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd W = Eigen::Matrix4cd::Zero();
    W(0, 0) = rt2; W(0, 1) = 1i * rt2;
    W(1, 0) = rt2; W(1, 1) = -1i * rt2;
    W(2, 2) = rt2; W(2, 3) = 1i * rt2;
    W(3, 2) = rt2; W(3, 3) = -1i * rt2;
    const Eigen::Matrix4cd K = W * Cp.cast<cd>() * W.transpose();

    // Gaussian moments E[alpha^m conj(alpha)^mp beta^n conj(beta)^np] by
    // Wick pairing; lexicographic fill is a valid order since every reduced
    // index is componentwise smaller
    const int d = cutoff + 1;
    const auto at = [d](int m, int mp, int n, int np) {
        return ((m * d + mp) * d + n) * d + np;
    };
    std::vector<cd> mom(static_cast<std::size_t>(d) * d * d * d, cd(0, 0));
    mom[at(0, 0, 0, 0)] = 1.0;
    std::array<int, 4> e{};
    for (e[0] = 0; e[0] < d; ++e[0])
        for (e[1] = 0; e[1] < d; ++e[1])
            for (e[2] = 0; e[2] < d; ++e[2])
                for (e[3] = 0; e[3] < d; ++e[3]) {
                    if (e[0] + e[1] + e[2] + e[3] == 0) continue;
                    int v = 0;
                    while (e[v] == 0) ++v;
                    cd acc(0, 0);
                    for (int u = 0; u < 4; ++u) {
                        const int cnt = e[u] - (u == v ? 1 : 0);
                        if (cnt <= 0) continue;
                        std::array<int, 4> e2 = e;
                        --e2[v];
                        --e2[u];
                        acc += static_cast<double>(cnt) * K(v, u)
                             * mom[at(e2[0], e2[1], e2[2], e2[3])];
                    }
                    mom[at(e[0], e[1], e[2], e[3])] = acc;
                }

    std::vector<double> rt(d);
    for (int k = 0; k < d; ++k) rt[k] = std::sqrt(std::tgamma(k + 1.0));
    FockOperator op;
    op.cutoff = cutoff;
    op.matrix.resize(d * d, d * d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
            for (int mp = 0; mp < d; ++mp)
                for (int np = 0; np < d; ++np)
                    op.matrix(m * d + n, mp * d + np) =
                        Z * mom[at(m, mp, n, np)] / (rt[m] * rt[mp] * rt[n] * rt[np]);
    op.tail_mass = 1.0 - op.matrix.trace().real();
    return op;
}

static GaussianState mixed_output_state(const CoherenceParams& p, double y, double delta) {
    GaussianState base = stellar_state(p);
    base.cov(0, 0) += y;
    base.cov(1, 1) += y;
    base = apply_phase(base, 1, delta);
    return apply_beamsplitter(base, 0, 1, 1.0 / std::sqrt(2.0), 0.0);
}

PnrDistribution pnr_distribution(const CoherenceParams& p, double y, double delta, int cutoff) {
    const FockOperator op = gaussian_to_fock(mixed_output_state(p, y, delta), cutoff);
    const int d = cutoff + 1;
    PnrDistribution out;
    out.probs.resize(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) out.probs(m, n) = op.matrix(m * d + n, m * d + n).real();
    out.delta = delta;
    out.params = p;
    out.y = y;
    out.cutoff = cutoff;
    out.tail_mass = 1.0 - out.probs.sum();
    return out;
}

FisherMatrix classical_fi_pnr(const CoherenceParams& p, double y, double delta, int cutoff,
                              double fd_step, double tail_budget, double p_floor) {
    const PnrDistribution base = pnr_distribution(p, y, delta, cutoff);
    if (base.tail_mass > tail_budget)
        throw std::domain_error("truncation tail exceeds budget; FI unreliable");
    const auto dist = [&](double th, double g) {
        CoherenceParams q{p.epsilon, g, th};
        return pnr_distribution(q, y, delta, cutoff).probs;
    };
    const double h = fd_step;
    const Eigen::MatrixXd dth = (dist(p.theta + h, p.g_abs) - dist(p.theta - h, p.g_abs)) / (2 * h);
    const Eigen::MatrixXd dg = (dist(p.theta, p.g_abs + h) - dist(p.theta, p.g_abs - h)) / (2 * h);
    double fthth = 0, fgg = 0, fthg = 0;
    for (int m = 0; m <= cutoff; ++m)
        for (int n = 0; n <= cutoff; ++n) {
            const double pr = base.probs(m, n);
            if (pr <= p_floor) continue;
            fthth += dth(m, n) * dth(m, n) / pr;
            fgg += dg(m, n) * dg(m, n) / pr;
            fthg += dth(m, n) * dg(m, n) / pr;
        }
    return {fthth, fgg, fthg, FiKind::pnr_measurement};
}

static Eigen::Matrix4d teleported_cov(const CoherenceParams& p, double y) {
    GaussianState st = stellar_state(p);
    st.cov(0, 0) += y;
    st.cov(1, 1) += y;
    return st.cov;
}

SldReport verify_sld(const CoherenceParams& p, double y, int cutoff, SldWhich which,
                     double fd_step) {
    GaussianState st = stellar_state(p);
    st.cov = teleported_cov(p, y);
    const FockOperator rho_op = gaussian_to_fock(st, cutoff);
    const Eigen::MatrixXcd& rho = rho_op.matrix;

    const double h = fd_step;
    const auto rho_at = [&](double th, double g) {
        GaussianState s2 = vacuum_state(2);
        s2.cov = teleported_cov(CoherenceParams{p.epsilon, g, th}, y);
        return gaussian_to_fock(s2, cutoff).matrix;
    };
    Eigen::MatrixXcd drho;
    if (which == SldWhich::theta)
        drho = (rho_at(p.theta + h, p.g_abs) - rho_at(p.theta - h, p.g_abs)) / (2 * h);
    else
        drho = (rho_at(p.theta, p.g_abs + h) - rho_at(p.theta, p.g_abs - h)) / (2 * h);

    const Eigen::MatrixXcd A1 = mode1_annihilation(cutoff);
    const Eigen::MatrixXcd A2 = mode2_annihilation(cutoff);
    const Eigen::MatrixXcd Id =
        Eigen::MatrixXcd::Identity(A1.rows(), A1.cols());
    const SldCoefficients sc = sld_coefficients(p, y);
    Eigen::MatrixXcd L;
    if (which == SldWhich::theta) {
        L = 2.0 * std::conj(sc.p) * (A1 * A2.adjoint()) + 2.0 * sc.p * (A1.adjoint() * A2);
    } else {
        L = (sc.a / sc.d) * (2.0 * A1.adjoint() * A1 + Id)
          + (sc.c / sc.d) * (2.0 * A2.adjoint() * A2 + Id)
          + (2.0 * sc.b / sc.d) * (A1 * A2.adjoint())
          + (2.0 * std::conj(sc.b) / sc.d) * (A1.adjoint() * A2)
          + sc.e * Id;
    }
    const Eigen::MatrixXcd lhs = 0.5 * (L * rho + rho * L);
    const FisherMatrix qfi = qfi_closed_form(p, y);
    SldReport rep;
    rep.residual = (drho - lhs).norm() / drho.norm();
    rep.tr_rho_l = (rho * L).trace().real();
    rep.tr_rho_l2 = (rho * L * L).trace().real();
    rep.qfi_diagonal = (which == SldWhich::theta) ? qfi.f_theta_theta : qfi.f_g_g;
    rep.tail_mass = rho_op.tail_mass;
    return rep;
}

namespace {

double geometric_p(double nbar, int n) {
    return std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
}

// outcomes: {detector +, detector -, everything else}
std::array<double, 3> dv_outcome_probs(double eps, double g, double th, double delta) {
    const double nbp = 0.5 * eps * (1 + g);
    const double nbm = 0.5 * eps * (1 - g);
    const double p1 = geometric_p(nbp, 1) * geometric_p(nbm, 0)
                    + geometric_p(nbp, 0) * geometric_p(nbm, 1);
    const double succ = 0.5 * p1;
    const double c = std::cos(th - delta);
    return {succ * 0.5 * (1 + g * c), succ * 0.5 * (1 - g * c), 1.0 - succ};
}

} // namespace

FisherMatrix dv_scheme_fi(const CoherenceParams& p, double delta) {
    const double h = 1e-6;
    const auto probs = [&](double th, double g) {
        return dv_outcome_probs(p.epsilon, g, th, delta);
    };
    const auto base = probs(p.theta, p.g_abs);
    const auto thp = probs(p.theta + h, p.g_abs), thm = probs(p.theta - h, p.g_abs);
    const auto gp = probs(p.theta, p.g_abs + h), gm = probs(p.theta, p.g_abs - h);
    double fthth = 0, fgg = 0, fthg = 0;
    for (int k = 0; k < 3; ++k) {
        if (base[k] <= 1e-15) continue;
        const double dth = (thp[k] - thm[k]) / (2 * h);
        const double dg = (gp[k] - gm[k]) / (2 * h);
        fthth += dth * dth / base[k];
        fgg += dg * dg / base[k];
        fthg += dth * dg / base[k];
    }
    return {fthth, fgg, fthg, FiKind::dv_scheme};
}

FisherMatrix dv_scheme_fi(const CoherenceParams& p) {
    return dv_scheme_fi(p, p.theta + std::numbers::pi / 2);
}

} // namespace cvint
