#include "doctest.h"

#include <cmath>
#include <random>

#include "dirac/green.hpp"
#include "reference_values.hpp"
#include "test_util.hpp"

using namespace dirac;
using namespace dirac::green;
using testutil::max_abs;
using testutil::rel_err;

namespace {
constexpr double kPi = 3.141592653589793238;

RVec vec(std::initializer_list<double> v) {
    RVec r(static_cast<int>(v.size()));
    int i = 0;
    for (double d : v) r(i++) = d;
    return r;
}

RVec along(int n, double rho, std::mt19937_64& rng) { return rho * testutil::random_unit(n, rng); }
}  // namespace

TEST_CASE("n = 3 closed-form example") {
    const auto rep = clifford::build_clifford(3);
    const KernelMatrix K = green0(rep, I_unit, vec({1, 0, 0}), vec({0, 0, 0}));
    const Mat want = std::exp(-1.0) / (4 * kPi) * I_unit * (Mat::Identity(4, 4) + 2.0 * rep.alpha(1));
    CHECK(rel_err(K.value, want) <= 1e-14);
    const KernelMatrix Kg = green0_generic(rep, I_unit, vec({1, 0, 0}), vec({0, 0, 0}));
    CHECK(rel_err(Kg.value, want) <= 1e-12);
}

TEST_CASE("n = 3 fast path agrees with the Hankel route on random samples") {
    const auto rep = clifford::build_clifford(3);
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const cplx z = testutil::random_upper(rng, 0.01, 10.0);
        const RVec x = testutil::random_point(3, rng, 2.0), y = testutil::random_point(3, rng, 2.0);
        worst = std::max(worst, rel_err(green0_generic(rep, z, x, y).value, green0(rep, z, x, y).value));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("kernel coefficients against reference values") {
    double worst = 0.0;
    for (const auto& row : refvals::kKernel) {
        const KernelCoeffs c = green0_coeffs(row.n, row.z, row.rho);
        worst = std::max({worst, rel_err(c.a, row.a), rel_err(c.b, row.b)});
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("derivative coefficients against reference values") {
    double worst = 0.0;
    for (const auto& row : refvals::kDeriv) {
        const KernelCoeffs c = deriv_coeffs(row.n, row.r, row.z, row.rho);
        const double s = std::max(std::abs(row.a), std::abs(row.b));
        worst = std::max({worst, std::abs(c.a - row.a) / s, std::abs(c.b - row.b) / s});
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("Fourier-inversion oracle at n = 2, z = 2i") {
    const auto rep = clifford::build_clifford(2);
    for (const auto& row : refvals::kFourier2i) {
        const RVec x = vec({row.x0, row.x1});
        const RVec y = RVec::Zero(2);
        const Mat want = assemble(rep, {row.a, row.b}, x / x.norm());
        CHECK(max_abs(green0(rep, cplx(0, 2), x, y).value - want) <= 1e-4);
    }
}

TEST_CASE("translation invariance and errors") {
    std::mt19937_64 rng(12);
    for (int n = 2; n <= 6; ++n) {
        const auto rep = clifford::build_clifford(n);
        const RVec x = testutil::random_point(n, rng, 1.0), y = testutil::random_point(n, rng, 1.0);
        const RVec s = testutil::random_point(n, rng, 3.0);
        const cplx z(0.7, 0.4);
        CHECK(max_abs(green0(rep, z, x, y).value - green0(rep, z, x + s, y + s).value) <= 1e-14 * max_abs(green0(rep, z, x, y).value) + 1e-15);
        CHECK_THROWS(green0(rep, z, x, x));
        CHECK_THROWS(green0(rep, cplx(1.0, -0.1), x, y));
    }
}

TEST_CASE("representation independence") {
    std::mt19937_64 rng(77);
    for (int n = 2; n <= 5; ++n) {
        const auto rep = clifford::build_clifford(n);
        const Mat W = numerics::random_unitary(rep.N, rng);
        const auto rep2 = clifford::conjugated(rep, W);
        const RVec x = testutil::random_point(n, rng, 1.0), y = testutil::random_point(n, rng, 1.0);
        const cplx z(1.1, 0.3);
        const Mat K1 = green0(rep, z, x, y).value, K2 = green0(rep2, z, x, y).value;
        CHECK(max_abs(W * K1 * W.adjoint() - K2) <= 1e-12 * std::max(1.0, max_abs(K1)));
    }
}

TEST_CASE("zero-energy limit") {
    CHECK(std::abs(limit0_coefficient(3) - 1.0 / (4 * kPi)) <= 1e-15);
    CHECK(std::abs(limit0_coefficient(2) - 1.0 / (2 * kPi)) <= 1e-15);
    for (int n = 2; n <= 6; ++n) {
        const auto rep = clifford::build_clifford(n);
        std::mt19937_64 rng(n);
        const RVec x = testutil::random_point(n, rng, 1.0), y = testutil::random_point(n, rng, 1.0);
        CHECK(max_abs(green0_limit0(rep, x, y).value + green0_limit0(rep, y, x).value) <= 1e-15);
    }
    const auto r2 = clifford::build_clifford(2);
    const RVec x = vec({0.6, -0.2}), y = vec({0.0, 0.3});
    const RVec d = x - y;
    const Mat want = I_unit / (2 * kPi) * clifford::dirac_symbol(r2, d) / d.squaredNorm();
    CHECK(rel_err(green0_limit0(r2, x, y).value, want) <= 1e-14);
}

TEST_CASE("z -> 0 continuity is monotone with linear rate (n = 3) and z ln z rate (n = 2)") {
    for (int n : {2, 3}) {
        const auto rep = clifford::build_clifford(n);
        RVec x = RVec::Zero(n), y = RVec::Zero(n);
        x(0) = 0.8;
        y(1) = 0.5;
        const Mat K0 = green0_limit0(rep, x, y).value;
        double prev = 1e300;
        std::vector<double> le, lerr;
        for (int k = 3; k <= 12; ++k) {
            const double eps = std::ldexp(1.0, -k);
            const double err = max_abs(green0(rep, cplx(0, eps), x, y).value - K0);
            CHECK(err < prev);
            prev = err;
            // n = 2 carries a -(1/2pi) z ln z term
            le.push_back(n == 2 ? std::log(eps * std::abs(std::log(eps))) : std::log(eps));
            lerr.push_back(std::log(err));
        }
        // least-squares slope
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < le.size(); ++i) mx += le[i], my += lerr[i];
        mx /= le.size();
        my /= le.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < le.size(); ++i) sxy += (le[i] - mx) * (lerr[i] - my), sxx += (le[i] - mx) * (le[i] - mx);
        CHECK(sxy / sxx == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("first derivative matches finite differences") {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 7; ++n) {
        for (int t = 0; t < 4; ++t) {
            const cplx z = testutil::random_upper(rng, 0.3, 3.0) + cplx(0, 0.2);
            const double rho = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
            const KernelCoeffs d = deriv_coeffs(n, 1, z, rho);
            const double h = 1e-4;
            const KernelCoeffs p = green0_coeffs(n, z + h, rho), m = green0_coeffs(n, z - h, rho);
            const cplx fa = (p.a - m.a) / (2 * h), fb = (p.b - m.b) / (2 * h);
            const double s = std::max(std::abs(d.a), std::abs(d.b));
            CHECK(std::abs(d.a - fa) / s <= 1e-6);
            CHECK(std::abs(d.b - fb) / s <= 1e-6);
        }
    }
}

TEST_CASE("higher derivatives match finite differences") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 5;
        const cplx z = testutil::random_upper(rng, 0.5, 2.5) + cplx(0, 0.3);
        const double rho = std::uniform_real_distribution<double>(0.3, 1.5)(rng);
        for (int r = 1; r <= std::min(n, 4); ++r) {
            const KernelCoeffs d = deriv_coeffs(n, r, z, rho);
            const cplx fa = numerics::fd_derivative([&](cplx w) { return green0_coeffs(n, w, rho).a; }, z, r, 0.02, 6);
            const cplx fb = numerics::fd_derivative([&](cplx w) { return green0_coeffs(n, w, rho).b; }, z, r, 0.02, 6);
            const double s = std::max(std::abs(d.a), std::abs(d.b));
            CHECK(std::abs(d.a - fa) / s <= 1e-5);
            CHECK(std::abs(d.b - fb) / s <= 1e-5);
        }
    }
}

TEST_CASE("derivative regimes agree in the crossover band") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> band(0.8, 1.25), th(0.05, 3.0);
    double worst = 0.0;
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 6;
        const int r = 1 + t % n;
        const double rho = 1.0;
        const cplx z = std::polar(band(rng), th(rng));
        const KernelCoeffs s = deriv_coeffs_series(n, r, z, rho), c = deriv_coeffs_closed(n, r, z, rho);
        const double sc = std::max(std::abs(c.a), std::abs(c.b));
        worst = std::max({worst, std::abs(s.a - c.a) / sc, std::abs(s.b - c.b) / sc});
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("odd n, r = n derivative vanishes linearly on the diagonal") {
    for (int n : {3, 5}) {
        const auto rep = clifford::build_clifford(n);
        const cplx z(0.6, 0.4);
        auto size = [&](double rho) {
            RVec x = RVec::Zero(n);
            x(0) = rho;
            return max_abs(green0_deriv(rep, n, z, x, RVec::Zero(n)).value);
        };
        const double slope = std::log(size(1e-2) / size(1e-3)) / std::log(10.0);
        CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
    }
}

TEST_CASE("n = 2 second derivative carries -(1/2pi) z^{-1}") {
    const cplx z(0.0, 1e-4);
    const KernelCoeffs d = deriv_coeffs(2, 2, z, 1.0);
    CHECK(std::abs(z * d.a - (-1.0 / (2 * kPi))) <= 1e-3 / (2 * kPi));
}

TEST_CASE("derivative order validation") {
    const auto rep = clifford::build_clifford(3);
    CHECK_THROWS(green0_deriv(rep, 4, cplx(1, 1), vec({1, 0, 0}), vec({0, 0, 0})));
    CHECK_THROWS(green0_deriv(rep, 1, cplx(1, 1), vec({1, 0, 0}), vec({1, 0, 0})));
}

TEST_CASE("index helpers are consistent") {
    for (int r = 1; r <= 12; ++r) {
        CHECK(k_minus(r) >= 0);
        CHECK(k_plus(r) >= k_minus(r));
    }
}

TEST_CASE("odd-dimension coefficients") {
    const OddDimCoeffs c3 = odd_dim_coeffs(3);
    Rational fact = 1;
    for (int j = 0; j <= 6; ++j) {
        if (j > 0) fact *= j;
        CHECK(c3.d[j] == Rational(1) / fact);
    }
    CHECK(odd_dim_coeffs(5).d[1] == 0);
    const OddDimCoeffs c7 = odd_dim_coeffs(7);
    CHECK(c7.dprime[1] == 0);
    CHECK(c7.dprime[3] == 0);
    CHECK(c7.dprime[5] == 0);
    for (int n : {5, 7, 9, 11, 13}) {
        const OddDimCoeffs c = odd_dim_coeffs(n);
        for (int j = 1; j <= n - 4; j += 2) CHECK(c.d[j] == 0);
        for (int j = 1; j <= n - 2; j += 2) CHECK(c.dprime[j] == 0);
        // the pattern stops: the next odd index is generically nonzero
        CHECK(c.dprime[n] != 0);
    }
    CHECK_THROWS(odd_dim_coeffs(4));
    CHECK_THROWS(odd_dim_coeffs(15));
}

TEST_CASE("kernel bound report is finite in both regimes") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4, 5}) {
        const auto rep = clifford::build_clifford(n);
        std::vector<std::pair<RVec, RVec>> samples;
        std::uniform_real_distribution<double> lr(-3.0, 2.0);
        for (int s = 0; s < 200; ++s) samples.emplace_back(along(n, std::pow(10.0, lr(rng)), rng), RVec::Zero(n));
        for (int r = 0; r <= std::min(n, 3); ++r) {
            const BoundReport b = kernel_bound_report(rep, cplx(1.0, 0.5), r, samples);
            CHECK(b.small.nonfinite == 0);
            CHECK(b.large.nonfinite == 0);
            CHECK(b.small.samples + b.large.samples == 200);
            CHECK(std::isfinite(b.small.max_ratio));
            CHECK(std::isfinite(b.large.max_ratio));
            CHECK(b.small.max_ratio < 1e3);
            CHECK(b.large.max_ratio < 1e3);
        }
    }
    CHECK(envelope(3, 0, cplx(2.0, 0.0), 2.0) == doctest::Approx(std::pow(2.0, 1.0) * std::pow(2.0, -1.0)));
}

TEST_CASE("massive kernel") {
    std::mt19937_64 rng(21);
    for (int n = 2; n <= 4; ++n) {
        const auto rep = clifford::build_clifford(n);
        const RVec x = testutil::random_point(n, rng, 1.0), y = testutil::random_point(n, rng, 1.0);
        const cplx z(0.4, 0.9);
        // the m beta term makes the deviation linear in m
        const Mat G = green0(rep, z, x, y).value;
        const double e6 = rel_err(green0_massive(rep, 1e-6, z, x, y).value, G);
        const double e7 = rel_err(green0_massive(rep, 1e-7, z, x, y).value, G);
        CHECK(e6 <= 1e-5);
        CHECK(e6 / e7 == doctest::Approx(10.0).epsilon(0.01));
    }

    const auto r3 = clifford::build_clifford(3);
    const RVec x = vec({0.5, 0.0, 0.0}), y = RVec::Zero(3);
    // Cauchy behaviour with rate |z - m|^{1/2}
    const Mat g8 = green0_massive(r3, 1.0, cplx(1.0, 1e-8), x, y).value;
    const Mat g10 = green0_massive(r3, 1.0, cplx(1.0, 1e-10), x, y).value;
    const Mat g12 = green0_massive(r3, 1.0, cplx(1.0, 1e-12), x, y).value;
    const double d1 = max_abs(g8 - g10), d2 = max_abs(g10 - g12);
    CHECK(d2 <= 0.15 * d1);
    CHECK(d2 <= 1e-5 * max_abs(g12));

    const auto r2 = clifford::build_clifford(2);
    const RVec x2 = vec({0.5, 0.0}), y2 = RVec::Zero(2);
    const double m = 1.0;
    const cplx za(m, 1e-6), zb(m, 1e-9);
    const Mat ga = green0_massive(r2, m, za, x2, y2).value, gb = green0_massive(r2, m, zb, x2, y2).value;
    const cplx la = std::log(za * za - m * m), lb = std::log(zb * zb - m * m);
    const Mat slope = (ga - gb) / (la - lb);
    const Mat want = -1.0 / (4 * kPi) * (m * r2.beta() + m * Mat::Identity(2, 2));
    CHECK(max_abs(slope - want) <= 1e-3);

    CHECK_THROWS(green0_massive(r2, 1.0, cplx(2.0, 0.0), x2, y2));
    CHECK_THROWS(green0_massive(r2, 0.0, cplx(0.5, 0.5), x2, y2));
}
