#include "doctest.h"

#include <cmath>
#include <random>

#include "dirac/specfun.hpp"
#include "reference_values.hpp"
#include "test_util.hpp"

using namespace dirac;
using namespace dirac::specfun;
using testutil::rel_err;

namespace {
constexpr double kPi = 3.141592653589793238;
}

TEST_CASE("digamma at integers") {
    CHECK(digamma_int(1) == doctest::Approx(-0.5772156649015329).epsilon(1e-15));
    CHECK(digamma_int(2) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-15));
    CHECK(std::abs(digamma_int(4) - digamma_int(3) - 1.0 / 3.0) <= 1e-15);
    CHECK_THROWS_AS(digamma_int(0), std::domain_error);
}

TEST_CASE("J spot values") {
    CHECK(std::abs(bessel_j(0.0, cplx(1e-9, 0)) - 1.0) <= 1e-15);
    CHECK(rel_err(bessel_j(0.5, cplx(kPi / 2, 0)), 2.0 / kPi) <= 1e-14);
    const cplx j1 = bessel_j(1.0, 1.0);
    CHECK(rel_err(j1, 0.44005058574493351596) <= 1e-13);
}

TEST_CASE("half-integer closed forms") {
    // Y_{1/2}(pi/2) = 0, so H equals J_{1/2}(pi/2) = 2/pi
    CHECK(std::abs(hankel1(0.5, cplx(kPi / 2, 0)) - 2.0 / kPi) <= 1e-15);
    const cplx want = -std::sqrt(2.0 / kPi) * std::exp(I_unit) * cplx(1.0, 1.0);
    CHECK(rel_err(hankel1(1.5, 1.0), want) <= 1e-14);
}

TEST_CASE("H_0 logarithmic behavior near zero") {
    // H_0 = (2i/pi) ln zeta + 1 + (2i/pi)(gamma - ln 2) + O(|zeta|^2 |ln zeta|)
    const cplx c0 = 1.0 + 2.0 * I_unit / kPi * (kEulerGamma - std::log(2.0));
    for (double r : {1e-2, 1e-4, 1e-6}) {
        const cplx zeta(r, r);
        const cplx rest = hankel1(0.0, zeta) - 2.0 * I_unit / kPi * std::log(zeta) - c0;
        CHECK(std::abs(rest) <= std::norm(zeta) * std::abs(std::log(zeta)));
    }
}

TEST_CASE("reference values: H1 and J") {
    double worst_h = 0.0, worst_j = 0.0;
    for (const auto& row : refvals::kBessel) {
        worst_h = std::max(worst_h, rel_err(hankel1(row.nu, row.zeta), row.h1));
        if (std::abs(row.zeta) < 30.0) worst_j = std::max(worst_j, rel_err(bessel_j(row.nu, row.zeta), row.j));
    }
    CHECK(worst_h <= 1e-10);
    CHECK(worst_j <= 1e-10);
}

TEST_CASE("reference values: Y") {
    double worst = 0.0;
    for (const auto& row : refvals::kBesselY) worst = std::max(worst, rel_err(bessel_y(row.n, row.zeta), row.y));
    CHECK(worst <= 1e-10);
}

TEST_CASE("Y_0 harmonic form agrees with the digamma form") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        const cplx zeta = testutil::random_upper(rng, 0.01, 20.0);
        CHECK(rel_err(bessel_y(0, zeta), bessel_y0_digamma_form(zeta)) <= 1e-10);
    }
}

TEST_CASE("closed forms agree with the series route for |zeta| <= 10") {
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const cplx zeta = testutil::random_upper(rng, 0.05, 10.0);
        for (double nu : {0.5, 1.5, 2.5, 3.5}) worst = std::max(worst, rel_err(hankel1_halfint(nu, zeta), hankel1_series(nu, zeta)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("series and asymptotics agree on 20 <= |zeta| <= 40") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(20.0, 40.0), t(0.0, 0.8 * kPi);
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        const cplx zeta = std::polar(r(rng), t(rng));
        for (double nu : {0.0, 1.0, 2.0}) {
            const AsymptoticValue av = hankel1_asymptotic_auto(nu, zeta);
            worst = std::max(worst, rel_err(av.value, hankel1_series(nu, zeta)));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("asymptotic expansion") {
    const cplx zeta(30.0, 5.0);
    const AsymptoticValue half = hankel1_asymptotic(0.5, zeta, 1);
    CHECK(rel_err(half.value, hankel1_halfint(0.5, zeta)) <= 1e-14);

    const AsymptoticValue a0 = hankel1_asymptotic(0.0, cplx(40.0, 0.0), 12);
    CHECK(rel_err(a0.value, hankel1_series(0.0, cplx(40.0, 0.0))) <= 1e-6);

    double prev = 1e300;
    for (int p = 1; p <= 6; ++p) {
        const AsymptoticValue v = hankel1_asymptotic(1.0, zeta, p);
        CHECK(v.remainder_scale < prev);
        prev = v.remainder_scale;
    }
    CHECK_THROWS_AS(hankel1_asymptotic(0.0, cplx(10.0, 0.0), 4), std::domain_error);
}

TEST_CASE("negative orders") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const cplx zeta = testutil::random_upper(rng, 0.1, 15.0);
        for (int n = 1; n <= 4; ++n) {
            const cplx s = n % 2 ? -1.0 : 1.0;
            CHECK(rel_err(hankel1(-n, zeta), s * hankel1(n, zeta)) <= 1e-12);
        }
        // H_{-1/2} = e^{i pi/2} H_{1/2}
        CHECK(rel_err(hankel1(-0.5, zeta), I_unit * hankel1(0.5, zeta)) <= 1e-12);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS(hankel1(0.0, cplx(0.0, 0.0)));
    CHECK_THROWS(hankel1(1.0, cplx(1.0, -0.5)));
    CHECK_THROWS(twice_order(0.3));
    CHECK(twice_order(1.5) == 3);
}

TEST_CASE("precision tiers") {
    CHECK(series_precision(cplx(1.0, 0.0)) == Precision::Double);
    CHECK(series_precision(cplx(0.0, 24.0)) != Precision::Double);
}
