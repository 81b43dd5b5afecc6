#include "doctest.h"
#include "cvint/mzi.hpp"
#include <cmath>
#include <initializer_list>

using namespace cvint;

TEST_CASE("interferometer moments, closed form") {
    SUBCASE("vacuum inputs") {
        MziStats s = mzi_stats({0.0, 0.0, 1.3});
        CHECK(s.mean_n == 0.0);
        CHECK(s.var_n == 0.0);
    }
    SUBCASE("coherent-only shot noise") {
        MziStats s = mzi_stats({2.0, 0.0, M_PI / 2});
        CHECK(std::abs(s.mean_n) < 1e-15);
        CHECK(s.var_n == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("generic anchor") {
        MziStats s = mzi_stats({1.0, 0.5, 0.7});
        double sh = std::sinh(0.5), ch = std::cosh(0.5);
        double c = std::cos(0.7), sn = std::sin(0.7);
        CHECK(s.mean_n == doctest::Approx((sh * sh - 1.0) * c).epsilon(1e-14));
        CHECK(s.var_n == doctest::Approx(c * c * (1.0 + 2 * sh * sh * ch * ch) +
                                         sn * sn * (std::exp(1.0) + sh * sh))
                             .epsilon(1e-14));
    }
    SUBCASE("interference noise drops for negative squeezing") {
        double phi = M_PI / 2 - 0.05;
        double plus = mzi_stats({1.0, 0.5, phi}).var_n;
        double minus = mzi_stats({1.0, -0.5, phi}).var_n;
        double none = mzi_stats({1.0, 0.0, phi}).var_n;
        CHECK(minus < none);
        CHECK(none < plus);
    }
}

TEST_CASE("number-basis cross-check") {
    SUBCASE("documented operating point") {
        MziFockReport rep = mzi_fock_check({1.0, 0.5, 0.7}, 40);
        CHECK(rep.tail_mass < 1e-10);
        CHECK(rep.mean_abs_dev < 1e-6);
        CHECK(rep.var_abs_dev < 1e-6);
    }
    SUBCASE("negative squeezing") {
        MziFockReport rep = mzi_fock_check({0.8, -0.6, 1.2}, 36);
        CHECK(rep.mean_abs_dev < 1e-6);
        CHECK(rep.var_abs_dev < 1e-6);
    }
    SUBCASE("coherent only") {
        MziFockReport rep = mzi_fock_check({1.5, 0.0, 0.4}, 30);
        CHECK(rep.mean_abs_dev < 1e-8);
        CHECK(rep.var_abs_dev < 1e-7);
    }
    SUBCASE("squeezed only") {
        MziFockReport rep = mzi_fock_check({0.0, 0.7, 2.0}, 36);
        CHECK(rep.mean_abs_dev < 1e-7);
        CHECK(rep.var_abs_dev < 1e-6);
    }
    SUBCASE("serial and threaded paths agree exactly") {
        MziFockReport a = mzi_fock_check({1.0, 0.5, 0.7}, 24, false);
        MziFockReport b = mzi_fock_check({1.0, 0.5, 0.7}, 24, true);
        CHECK(a.mean_n == b.mean_n);
        CHECK(a.var_n == b.var_n);
    }
    SUBCASE("insufficient cutoff is refused") {
        CHECK_THROWS(mzi_fock_check({2.5, 0.0, 0.3}, 4));
    }
}

TEST_CASE("variance is nonnegative over a parameter sweep") {
    for (double alpha : {0.0, 0.3, 1.0, 2.0})
        for (double r : {-1.0, -0.3, 0.0, 0.4, 1.2})
            for (double phi : {0.0, 0.5, 1.2, M_PI / 2, 2.8}) {
                MziStats s = mzi_stats({alpha, r, phi});
                CHECK(s.var_n >= 0.0);
            }
}
