#include "cvint/teleport.hpp"
#include "cvint/rng.hpp"
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvint {

LinkParams effective_squeezing(double r, double T) {
    if (r < 0.0) throw std::invalid_argument("squeezing parameter must be >= 0");
    if (T < 0.0 || T > 1.0) throw std::invalid_argument("transmissivity must be in [0,1]");
    LinkParams lp;
    lp.r = r;
    lp.T = T;
    const double e2 = 1 - T * T + std::exp(-2 * r) * T * T;
    lp.r_eff = -0.5 * std::log(e2);
    lp.y = 2 * e2;
    return lp;
}

LinkParams link_from_r_eff(double r_eff) {
    if (r_eff < 0.0) throw std::invalid_argument("effective squeezing must be >= 0");
    return effective_squeezing(r_eff, 1.0);
}

GaussianState teleported_state(const CoherenceParams& p, const LinkParams& link) {
    GaussianState st = stellar_state(p);
    st.cov(0, 0) += link.y;
    st.cov(1, 1) += link.y;
    return st;
}

// Joint 8x8 covariance of (stellar A, stellar B, resource near, resource far)
// and the 4x8 linear map taking a joint phase-space point to the output
// (teleported, stellar B) point. The resource block enters at twice the
// state covariance: the protocol's quadratic form and the covariance
// convention differ by that factor, and the end-to-end identity
// pipeline == teleported_state (tested to 1e-12) pins it together with the
// feedforward signs.
static void pipeline_pieces(const CoherenceParams& p, double r, double T,
                            Eigen::Matrix<double, 8, 8>& joint,
                            Eigen::Matrix<double, 4, 8>& lin) {
    const GaussianState stellar = stellar_state(p);
    const GaussianState res = lossy_tms_state(r, T);
    joint.setZero();
    joint.topLeftCorner<4, 4>() = stellar.cov;
    joint.bottomRightCorner<4, 4>() = 2.0 * res.cov;
    // x = (q1,p1,q2,p2,q3,p3,q4,p4); homodyne reads qm = (q1+q3)/sqrt2 and
    // pm = (p3-p1)/sqrt2 after the balanced mix; feedforward
    // q4 -> q4 + sqrt2*qm, p4 -> p4 - sqrt2*pm
    lin.setZero();
    lin(0, 6) = 1; lin(0, 0) = 1; lin(0, 4) = 1;
    lin(1, 7) = 1; lin(1, 1) = 1; lin(1, 5) = -1;
    lin(2, 2) = 1;
    lin(3, 3) = 1;
}

Eigen::Matrix4d pipeline_output_cov(const CoherenceParams& p, double r, double T) {
    Eigen::Matrix<double, 8, 8> joint;
    Eigen::Matrix<double, 4, 8> lin;
    pipeline_pieces(p, r, T, joint, lin);
    return lin * joint * lin.transpose();
}

namespace {

struct BlockSums {
    double s[4] = {0, 0, 0, 0};        // sum of outputs
    double ss[10] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0}; // upper triangle of sum of outer products
};

// samples [start, start+count) of the deterministic stream
BlockSums run_block(const Eigen::Matrix<double, 4, 8>& map, std::uint64_t seed,
                    std::uint64_t start, std::uint64_t count) {
    BlockSums b;
    double z[8], out[4];
    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t pair0 = 4 * (start + k);
        normal_pair_at(seed, pair0 + 0, z[0], z[1]);
        normal_pair_at(seed, pair0 + 1, z[2], z[3]);
        normal_pair_at(seed, pair0 + 2, z[4], z[5]);
        normal_pair_at(seed, pair0 + 3, z[6], z[7]);
        for (int i = 0; i < 4; ++i) {
            double acc = 0;
            for (int j = 0; j < 8; ++j) acc += map(i, j) * z[j];
            out[i] = acc;
        }
        int t = 0;
        for (int i = 0; i < 4; ++i) {
            b.s[i] += out[i];
            for (int j = i; j < 4; ++j) b.ss[t++] += out[i] * out[j];
        }
    }
    return b;
}

} // namespace

TeleportSampleReport simulate_teleportation(const CoherenceParams& p, double r, double T,
                                            std::uint64_t n_samples, std::uint64_t seed,
                                            Execution exec) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    Eigen::Matrix<double, 8, 8> joint;
    Eigen::Matrix<double, 4, 8> lin;
    pipeline_pieces(p, r, T, joint, lin);
    const Eigen::Matrix<double, 8, 8> chol = joint.llt().matrixL();
    const Eigen::Matrix<double, 4, 8> map = lin * chol;

    constexpr std::uint64_t block = 8192;
    const std::uint64_t n_blocks = (n_samples + block - 1) / block;
    std::vector<BlockSums> parts(n_blocks);

    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long bi = 0; bi < static_cast<long long>(n_blocks); ++bi) {
            const std::uint64_t start = bi * block;
            parts[bi] = run_block(map, seed, start, std::min(block, n_samples - start));
        }
    } else {
        for (std::uint64_t bi = 0; bi < n_blocks; ++bi) {
            const std::uint64_t start = bi * block;
            parts[bi] = run_block(map, seed, start, std::min(block, n_samples - start));
        }
    }

    // fixed-order reduction: results do not depend on the thread count
    BlockSums tot;
    for (const auto& b : parts) {
        for (int i = 0; i < 4; ++i) tot.s[i] += b.s[i];
        for (int t = 0; t < 10; ++t) tot.ss[t] += b.ss[t];
    }

    TeleportSampleReport rep;
    rep.n_samples = n_samples;
    rep.seed = seed;
    const double n = static_cast<double>(n_samples);
    for (int i = 0; i < 4; ++i) rep.empirical_mean(i) = tot.s[i] / n;
    int t = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double m2 = tot.ss[t++] / n;
            const double c = (m2 - rep.empirical_mean(i) * rep.empirical_mean(j)) * (n / (n - 1));
            rep.empirical_cov(i, j) = c;
            rep.empirical_cov(j, i) = c;
        }
    rep.target_cov = teleported_state(p, effective_squeezing(r, T)).cov;
    // Gaussian fourth-moment standard errors, evaluated at the target
    for (int i = 0; i < 4; ++i) {
        rep.stderr_mean(i) = std::sqrt(rep.target_cov(i, i) / n);
        for (int j = 0; j < 4; ++j)
            rep.stderr_cov(i, j) = std::sqrt((rep.target_cov(i, i) * rep.target_cov(j, j) +
                                              rep.target_cov(i, j) * rep.target_cov(i, j)) / n);
    }
    rep.max_abs_deviation = (rep.empirical_cov - rep.target_cov).cwiseAbs().maxCoeff();
    return rep;
}

} // namespace cvint
