#include "doctest.h"
#include "cvint/gaussian.hpp"
#include "cvint/rng.hpp"
#include <cmath>

using namespace cvint;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("vacuum state") {
    GaussianState v = vacuum_state(2);
    CHECK(v.n_modes() == 2);
    CHECK(v.mean.norm() == 0.0);
    CHECK((v.cov - 0.5 * MatrixXd::Identity(4, 4)).norm() == 0.0);
    Eigen::VectorXd nu = symplectic_eigenvalues(v);
    CHECK(nu.size() == 2);
    CHECK(nu(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nu(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(is_physical(v));
}

TEST_CASE("stellar covariance structure") {
    CoherenceParams p{0.4, 0.7, 0.3};
    GaussianState st = stellar_state(p);
    double c = std::cos(0.3), s = std::sin(0.3);
    double eg = 0.5 * 0.4 * 0.7;
    CHECK(st.cov(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(st.cov(1, 1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(st.cov(2, 2) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(st.cov(0, 1) == 0.0);
    CHECK(st.cov(0, 2) == doctest::Approx(eg * c).epsilon(1e-15));
    CHECK(st.cov(0, 3) == doctest::Approx(-eg * s).epsilon(1e-15));
    CHECK(st.cov(1, 2) == doctest::Approx(eg * s).epsilon(1e-15));
    CHECK(st.cov(1, 3) == doctest::Approx(eg * c).epsilon(1e-15));
    CHECK((st.cov - st.cov.transpose()).norm() == 0.0);
    CHECK(is_physical(st));
}

TEST_CASE("stellar state ladder moments") {
    CoherenceParams p{0.2, 0.55, 1.1};
    LadderCovariance lc = quad_to_ladder(stellar_state(p));
    // <a1 a2*> slot carries (eps g / 2) e^{i theta}
    std::complex<double> expect = 0.5 * 0.2 * 0.55 * std::exp(std::complex<double>(0, 1.1));
    CHECK(std::abs(lc.sigma(0, 3) - expect) < 1e-15);
    CHECK(std::abs(lc.sigma(1, 2) - std::conj(expect)) < 1e-15);
    // diagonal symmetrized occupation (1 + eps)/2
    CHECK(std::abs(lc.sigma(0, 1) - 0.6) < 1e-15);
    CHECK(std::abs(lc.sigma(2, 3) - 0.6) < 1e-15);
    // round trip
    GaussianState back = ladder_to_quad(lc);
    CHECK((back.cov - stellar_state(p).cov).norm() < 1e-14);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(validate(CoherenceParams{-0.1, 0.5, 0.0}));
    CHECK_THROWS(validate(CoherenceParams{0.1, 1.5, 0.0}));
    CHECK_THROWS(validate(CoherenceParams{0.1, -0.2, 0.0}));
    CHECK_NOTHROW(validate(CoherenceParams{0.1, 1.0, -2.0}));
}

TEST_CASE("two-mode squeezed states") {
    double r = 0.8;
    GaussianState ideal = ideal_tms_state(r);
    double ch = std::cosh(2 * r) / 2, sh = std::sinh(2 * r) / 2;
    CHECK(ideal.cov(0, 0) == doctest::Approx(ch).epsilon(1e-15));
    CHECK(ideal.cov(0, 2) == doctest::Approx(-sh).epsilon(1e-15));
    CHECK(ideal.cov(1, 3) == doctest::Approx(sh).epsilon(1e-15));
    CHECK(ideal.cov(0, 3) == 0.0);
    // pure state: symplectic eigenvalues 1/2
    Eigen::VectorXd nu = symplectic_eigenvalues(ideal);
    CHECK(nu(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nu(1) == doctest::Approx(0.5).epsilon(1e-12));

    SUBCASE("lossless limit matches the ideal state") {
        GaussianState lossy = lossy_tms_state(r, 1.0);
        CHECK((lossy.cov - ideal.cov).norm() < 1e-12);
    }
    SUBCASE("loss channel composition") {
        double T = 0.9;
        GaussianState lossy = lossy_tms_state(r, T);
        GaussianState chan = apply_loss(apply_loss(ideal, 0, T * T), 1, T * T);
        CHECK((lossy.cov - chan.cov).norm() < 1e-12);
        CHECK(is_physical(lossy));
    }
    SUBCASE("full loss gives vacuum") {
        GaussianState dead = lossy_tms_state(r, 0.0);
        CHECK((dead.cov - 0.5 * MatrixXd::Identity(4, 4)).norm() < 1e-14);
    }
}

TEST_CASE("beamsplitter is symplectic") {
    MatrixXd omega = quad_symplectic_form(3);
    for (double t : {1.0, 0.3, 1.0 / std::sqrt(2.0)}) {
        for (double ph : {0.0, 0.7, -2.1}) {
            MatrixXd s = beamsplitter_symplectic(3, 0, 2, t, ph);
            CHECK((s * omega * s.transpose() - omega).norm() < 1e-13);
        }
    }
}

TEST_CASE("beamsplitter on displaced vacuum") {
    GaussianState st = vacuum_state(2);
    st = apply_displacement(st, 0, 1.0, 0.0);
    GaussianState out = apply_beamsplitter(st, 0, 1, 1.0 / std::sqrt(2.0), 0.0);
    // a1' = t a1 + s a2, a2' = -s a1 + t a2 at t = s = 1/sqrt2
    CHECK(out.mean(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(out.mean(2) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(out.mean(1)) + std::abs(out.mean(3)) < 1e-14);
    // covariance of vacuum is invariant
    CHECK((out.cov - st.cov).norm() < 1e-14);
    double pin = st.mean.squaredNorm(), pout = out.mean.squaredNorm();
    CHECK(pin == doctest::Approx(pout).epsilon(1e-14));
}

TEST_CASE("phase rotation convention") {
    GaussianState st = vacuum_state(1);
    st = apply_displacement(st, 0, 1.0, 0.0);
    GaussianState rot = apply_phase(st, 0, M_PI / 2);
    // a -> e^{i delta} a maps q -> -p axis at delta = pi/2
    CHECK(rot.mean(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rot.mean(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("loss channel fixed point and attenuation") {
    GaussianState v = vacuum_state(1);
    CHECK((apply_loss(v, 0, 0.3).cov - v.cov).norm() < 1e-15);
    GaussianState st = vacuum_state(1);
    st.cov(0, 0) = 2.0;
    st.cov(1, 1) = 2.0;
    GaussianState out = apply_loss(st, 0, 0.25);
    CHECK(out.cov(0, 0) == doctest::Approx(0.25 * 2.0 + 0.75 * 0.5).epsilon(1e-14));
    CHECK_THROWS(apply_loss(st, 0, 1.5));
}

TEST_CASE("homodyne conditioning") {
    SUBCASE("product state posterior is untouched") {
        CoherenceParams p{0.3, 0.0, 0.0}; // g = 0: modes uncorrelated
        GaussianState st = stellar_state(p);
        auto [post, pdf] = condition_on_homodyne(st, 0, Quadrature::q, 0.7);
        CHECK(post.n_modes() == 1);
        CHECK(post.cov(0, 0) == doctest::Approx(st.cov(2, 2)).epsilon(1e-14));
        CHECK(pdf.mean == 0.0);
        CHECK(pdf.variance == doctest::Approx(st.cov(0, 0)).epsilon(1e-14));
    }
    SUBCASE("correlated pair contracts the posterior") {
        GaussianState tms = ideal_tms_state(1.0);
        auto [post, pdf] = condition_on_homodyne(tms, 0, Quadrature::q, 0.4);
        double vq = tms.cov(0, 0), cqq = tms.cov(0, 2);
        // Schur complement on the kept q block
        CHECK(post.cov(0, 0) == doctest::Approx(vq - cqq * cqq / vq).epsilon(1e-12));
        CHECK(post.mean(0) == doctest::Approx(cqq / vq * 0.4).epsilon(1e-12));
        CHECK(pdf.variance == doctest::Approx(vq).epsilon(1e-14));
        // p quadrature of the survivor keeps its marginal variance
        CHECK(post.cov(1, 1) == doctest::Approx(tms.cov(3, 3)).epsilon(1e-12));
    }
}

TEST_CASE("symplectic eigenvalues of a thermal state") {
    GaussianState th = vacuum_state(2);
    th.cov(0, 0) = th.cov(1, 1) = 1.7; // nbar = 1.2
    th.cov(2, 2) = th.cov(3, 3) = 0.9; // nbar = 0.4
    Eigen::VectorXd nu = symplectic_eigenvalues(th);
    CHECK(nu(0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(nu(1) == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("unphysical covariance is rejected") {
    GaussianState st = vacuum_state(1);
    st.cov *= 0.8; // below vacuum noise in every direction
    CHECK_FALSE(is_physical(st));
}

TEST_CASE("randomized physicality sweep") {
    int bad = 0, cases = 0;
    for (int k = 0; k < 400; ++k) {
        double eps = std::exp(std::log(1e-6) + uniform_at(11, 3 * k) * std::log(1e7));
        double g = uniform_at(11, 3 * k + 1);
        double th = (uniform_at(11, 3 * k + 2) - 0.5) * 6.0;
        GaussianState st = stellar_state(CoherenceParams{eps, g, th});
        if (!is_physical(st)) ++bad;
        ++cases;
    }
    CHECK(cases == 400);
    CHECK(bad == 0);
}
