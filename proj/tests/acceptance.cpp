// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dirac/clifford.hpp"
#include "dirac/discretize.hpp"
#include "dirac/green.hpp"
#include "dirac/regdet.hpp"
#include "dirac/resolvalg.hpp"
#include "dirac/specfun.hpp"
#include "dirac/ssf.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"
#include "test_util.hpp"

using namespace dirac;
using testutil::max_abs;
using testutil::rel_err;

namespace {

constexpr double kPi = 3.141592653589793238;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    return sxy / sxx;
}

Outcome clifford_relations() {
    bool exact = true;
    for (int n = 2; n <= 8; ++n) {
        const auto r = clifford::check_relations(clifford::build_clifford(n));
        exact = exact && r.entries_gaussian_integer && r.hermitian && r.anticommute;
    }
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
        const auto rep = clifford::build_clifford(n);
        Mat D = Mat::Zero(rep.N, rep.N);
        D.diagonal().head(rep.N / 2).setConstant(-1.0);
        D.diagonal().tail(rep.N / 2).setConstant(1.0);
        for (int t = 0; t < 100; ++t) {
            const RVec w = testutil::random_unit(n, rng);
            const Mat T = clifford::diagonalizer(rep, w);
            worst = std::max(worst, max_abs(T.adjoint() * clifford::dirac_symbol(rep, w) * T - D));
        }
    }
    return {exact && worst <= 1e-12, std::string("exact relations n=2..8: ") + (exact ? "yes" : "no") +
                                         ", max diagonalization residual " + fmt("%.2e", worst)};
}

Outcome hankel_cross_regime() {
    std::mt19937_64 rng(202);
    double closed = 0.0;
    for (int t = 0; t < 200; ++t) {
        const cplx zeta = testutil::random_upper(rng, 0.05, 10.0);
        for (double nu : {0.5, 1.5, 2.5})
            closed = std::max(closed, rel_err(specfun::hankel1_halfint(nu, zeta), specfun::hankel1_series(nu, zeta)));
    }
    std::uniform_real_distribution<double> r(20.0, 40.0), th(0.0, 0.9 * kPi);
    double asym = 0.0;
    for (int t = 0; t < 200; ++t) {
        const cplx zeta = std::polar(r(rng), th(rng));
        for (double nu : {0.0, 1.0, 2.0, 3.0})
            asym = std::max(asym, rel_err(specfun::hankel1_asymptotic_auto(nu, zeta).value, specfun::hankel1_series(nu, zeta)));
    }
    return {closed <= 1e-10 && asym <= 1e-6,
            "closed vs series " + fmt("%.2e", closed) + ", series vs asymptotic " + fmt("%.2e", asym)};
}

Outcome green_kernel() {
    const auto rep3 = clifford::build_clifford(3);
    std::mt19937_64 rng(303);
    double fast = 0.0;
    for (int t = 0; t < 100; ++t) {
        const cplx z = testutil::random_upper(rng, 0.01, 10.0);
        const RVec x = testutil::random_point(3, rng, 2.0), y = testutil::random_point(3, rng, 2.0);
        fast = std::max(fast, rel_err(green::green0_generic(rep3, z, x, y).value, green::green0(rep3, z, x, y).value));
    }
    double min_slope = 1e300;
    for (int n : {2, 3}) {
        const auto rep = clifford::build_clifford(n);
        RVec x = RVec::Zero(n), y = RVec::Zero(n);
        x(0) = 0.8;
        y(1) = 0.5;
        const Mat K0 = green::green0_limit0(rep, x, y).value;
        std::vector<double> le, lerr;
        for (int k = 3; k <= 12; ++k) {
            const double eps = std::ldexp(1.0, -k);
            le.push_back(std::log(eps));
            lerr.push_back(std::log(max_abs(green::green0(rep, cplx(0, eps), x, y).value - K0)));
        }
        min_slope = std::min(min_slope, slope(le, lerr));
    }
    const auto rep2 = clifford::build_clifford(2);
    double fourier = 0.0;
    for (const auto& row : refvals::kFourier2i) {
        RVec x(2);
        x << row.x0, row.x1;
        const Mat want = green::assemble(rep2, {row.a, row.b}, x / x.norm());
        fourier = std::max(fourier, max_abs(green::green0(rep2, cplx(0, 2), x, RVec::Zero(2)).value - want));
    }
    return {fast <= 1e-10 && min_slope >= 0.9 && fourier <= 1e-4,
            "n=3 paths " + fmt("%.2e", fast) + ", z->0 slope " + fmt("%.3f", min_slope) + ", Fourier oracle " + fmt("%.2e", fourier)};
}

Outcome odd_coefficients() {
    bool ok = true;
    for (int n : {5, 7, 9}) {
        const auto c = green::odd_dim_coeffs(n);
        for (int j = 1; j <= n - 4; j += 2) ok = ok && c.d[j] == 0;
        for (int j = 1; j <= n - 2; j += 2) ok = ok && c.dprime[j] == 0;
    }
    return {ok, ok ? "vanishing pattern exact for n=5,7,9" : "nonzero coefficient found"};
}

Outcome product_formula() {
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) worst = std::max(worst, regdet::det_audit(k, 6, 100, 505 + k).max_residual);
    std::mt19937_64 rng(506);
    double tr = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Mat A = 0.4 * numerics::ginibre(6, 6, rng) / std::sqrt(6.0), B = 0.4 * numerics::ginibre(6, 6, rng) / std::sqrt(6.0);
        for (int k = 1; k <= 4; ++k) tr = std::max(tr, std::abs(regdet::trace_xk(k, A, B) - regdet::xk_correction(k, A, B).trace()));
    }
    return {worst <= 1e-10 && tr <= 1e-12, "max product residual " + fmt("%.2e", worst) + ", trace X_k gap " + fmt("%.2e", tr)};
}

Outcome ssf_oracle() {
    std::mt19937_64 rng(606);
    int safe = 0, mismatches = 0;
    for (int t = 0; t < 50; ++t) {
        const auto p = ssf::make_pair(testutil::random_hermitian(8, rng, 2.0), testutil::random_hermitian(8, rng, 1.0));
        const RVec a = ssf::eigenvalues(p.S0), b = ssf::eigenvalues(p.S());
        const double lo = std::min(a.minCoeff(), b.minCoeff()) - 1.0, hi = std::max(a.maxCoeff(), b.maxCoeff()) + 1.0;
        std::vector<double> grid(80);
        for (int i = 0; i < 80; ++i) grid[i] = lo + (hi - lo) * i / 79.0;
        const auto kr = ssf::ssf_boundary(p, grid, ssf::kDefaultEpsSchedule, ssf::Method::Krein);
        const auto e1 = ssf::ssf_boundary(p, grid, ssf::kDefaultEpsSchedule, ssf::Method::EqMain, 1);
        const auto e2 = ssf::ssf_boundary(p, grid, ssf::kDefaultEpsSchedule, ssf::Method::EqMain, 2);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (kr.flags[i]) continue;
            ++safe;
            const long o = ssf::ssf_count_oracle(p, grid[i]);
            if (std::lround(kr.xi[i]) != o || std::lround(e1.xi[i]) != o || std::lround(e2.xi[i]) != o) ++mismatches;
        }
    }
    std::uniform_real_distribution<double> c(-2.0, 2.0), w(0.5, 2.0);
    double krein = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto p = ssf::make_pair(testutil::random_hermitian(8, rng, 2.0), testutil::random_hermitian(8, rng, 1.0));
        const double c0 = c(rng), s = w(rng);
        auto f = [=](double x) { return std::exp(-(x - c0) * (x - c0) / (s * s)); };
        auto fp = [=](double x) { return -2.0 * (x - c0) / (s * s) * std::exp(-(x - c0) * (x - c0) / (s * s)); };
        const auto [lhs, rhs] = ssf::krein_identity(p, f, fp);
        krein = std::max(krein, std::abs(lhs - rhs));
    }
    return {mismatches == 0 && krein <= 1e-8, std::to_string(mismatches) + " mismatches at " + std::to_string(safe) +
                                                  " safe points, Krein residual " + fmt("%.2e", krein)};
}

Outcome higher_trace_formula() {
    std::mt19937_64 rng(707);
    const std::vector<cplx> zs{{1, 1}, {-0.5, 0.3}, {0, 2}, {0.2, -0.7}, {3, 0.5}};
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto p = ssf::make_pair(testutil::random_hermitian(4, rng, 2.0), testutil::random_hermitian(4, rng, 1.0));
        for (int m = 1; m <= 3; ++m)
            for (cplx z : zs) worst = std::max(worst, ssf::trace_formula_residual(m, p, z));
    }
    return {worst <= 1e-6, "max residual " + fmt("%.2e", worst)};
}

Outcome g_derivative_identity() {
    std::mt19937_64 rng(808);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto p = ssf::make_pair(testutil::random_hermitian(4, rng, 2.0), testutil::random_hermitian(4, rng, 1.0));
        for (int m = 1; m <= 3; ++m) {
            const cplx z = cplx(std::uniform_real_distribution<double>(-1, 1)(rng), 1.0);
            const cplx sym = ssf::g_deriv_paper(m, z, p);
            const cplx fd = numerics::fd_derivative([&](cplx q) { return ssf::g_correction(m, q, p); }, z, m, 0.03, 6);
            worst = std::max(worst, rel_err(sym, fd));
        }
    }
    return {worst <= 1e-4, "max relative error " + fmt("%.2e", worst)};
}

Outcome abel() {
    double closed = 0.0;
    for (double a : {0.2, 0.6, 1.0})
        for (double l : {1.1, 2.0, 4.0, 9.0}) {
            const double b = std::sqrt(l) + 1.0;
            const double want = (kPi / 2 - std::asin(a / std::sqrt(l))) / kPi;
            const double got = ssf::abel_transform([=](double v) { return v >= a && v <= b ? 1.0 : 0.0; }, l, {a, b});
            closed = std::max(closed, std::abs(got - want));
        }
    const auto lim = ssf::abel_zero_limit([](double v) { return v > 0 ? 1.0 : 0.0; });
    const double zero = std::abs(lim.value - 0.5);
    return {closed <= 1e-8 && zero <= 1e-6, "indicator error " + fmt("%.2e", closed) + ", zero-limit error " + fmt("%.2e", zero)};
}

Outcome witten() {
    std::mt19937_64 rng(909);
    double err = 0.0, var = 0.0;
    std::vector<std::pair<int, int>> shapes{{8, 5}, {5, 8}, {3, 3}, {6, 2}, {2, 7}, {4, 5}};
    for (auto [r, c] : shapes)
        for (int k = 1; k <= 2; ++k) {
            const auto w = ssf::witten_index(numerics::ginibre(r, c, rng), k);
            err = std::max(err, std::abs(w.extrapolated - (c - r)));
            var = std::max(var, w.variance);
        }
    return {err <= 1e-8 && var <= 1e-18, "max |index - (c - r)| " + fmt("%.2e", err) + ", max variance " + fmt("%.2e", var)};
}

Outcome bs_and_reconstructions() {
    std::mt19937_64 rng(1111);
    double bs = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto p = ssf::make_pair(testutil::random_hermitian(6, rng, 1.5), testutil::random_hermitian(6, rng, 1.0));
        bs = std::max(bs, resolvalg::bs_residuals(p, testutil::random_upper(rng, 0.3, 3.0) + cplx(0, 0.2)).max());
    }
    double jn = 0.0;
    int jn_wrong = 0;
    for (int t = 0; t < 200; ++t) {
        const int d = 6;
        Mat A = numerics::ginibre(d, d, rng);
        const bool singular = t % 4 == 0;
        if (singular) {
            const CVec u = numerics::random_unitary(d, rng).col(0);
            A = A * (Mat::Identity(d, d) - u * u.adjoint());
        }
        const Mat Q = numerics::random_unitary(d, rng);
        const Mat P = Q.leftCols(2) * Q.leftCols(2).adjoint();
        const auto r = resolvalg::jn_invert(A, P);
        if (r.invertible == singular) ++jn_wrong;
        if (r.invertible) jn = std::max(jn, r.residual);
    }
    double fes = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Mat M = numerics::ginibre(6, 6, rng);
        const auto f = resolvalg::feshbach_invert(M.topLeftCorner(2, 2), M.topRightCorner(2, 4), M.bottomLeftCorner(4, 2),
                                                  M.bottomRightCorner(4, 4));
        fes = std::max(fes, f.invertible ? f.residual : INFINITY);
    }
    const bool ok = bs <= 1e-10 && jn <= 1e-10 && jn_wrong == 0 && fes <= 1e-10;
    return {ok, "BS " + fmt("%.2e", bs) + ", JN " + fmt("%.2e", jn) + " (" + std::to_string(jn_wrong) +
                    " misclassified), Feshbach " + fmt("%.2e", fes)};
}

Outcome schatten_refinement() {
    const auto rep = clifford::build_clifford(2);
    const double R = 4.0, delta = 1.1, p = 3.0;
    double worst = 0.0;
    std::string detail;
    for (cplx z : {cplx(0, 0), cplx(0, 1)}) {
        const double a = discretize::schatten_norm(
            discretize::assemble_weighted_resolvent(rep, discretize::build_grid(2, R, 16, rep.N), z, delta).matrix, p);
        const double b = discretize::schatten_norm(
            discretize::assemble_weighted_resolvent(rep, discretize::build_grid(2, R, 32, rep.N), z, delta).matrix, p);
        const double change = std::abs(b - a) / b;
        worst = std::max(worst, change);
        detail += (detail.empty() ? "" : ", ") + std::string(z == cplx(0, 0) ? "z=0: " : "z=i: ") + fmt("%.4f", a) + " -> " +
                  fmt("%.4f", b) + " (" + fmt("%.2f", 100 * change) + "%)";
    }
    return {worst <= 0.05, detail};
}

Outcome riesz_composition() {
    const double alpha = 0.8, beta = 0.8;
    const int n = 2;
    const double c = oracles::riesz_gamma(alpha, n) * oracles::riesz_gamma(beta, n) / oracles::riesz_gamma(alpha + beta, n);
    const double pts[5][4] = {{0, 0, 1, 0}, {0.3, -0.2, 0.3, 0.5}, {-1, 2, 1.5, -0.5}, {0.1, 0.1, 0.15, 0.12}, {2, 2, -3, 4}};
    double worst = 0.0;
    for (const auto& q : pts) {
        const double d = std::hypot(q[2] - q[0], q[3] - q[1]);
        const double num = oracles::riesz_convolution_2d(alpha, beta, d);
        worst = std::max(worst, std::abs(num - c * std::pow(d, alpha + beta - n)) / (c * std::pow(d, alpha + beta - n)));
    }
    return {worst <= 1e-2, "max relative error " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
    struct Item {
        const char* name;
        std::function<Outcome()> run;
        double limit;  // seconds
    };
    const std::vector<Item> items{
        {"clifford relations and diagonalization", clifford_relations, 10},
        {"Hankel cross-regime agreement", hankel_cross_regime, 10},
        {"Green kernel paths, zero limit, Fourier oracle", green_kernel, 300},
        {"odd-dimension coefficient vanishing", odd_coefficients, 1},
        {"regularized determinant product formula", product_formula, 30},
        {"spectral shift oracle equivalence", ssf_oracle, 120},
        {"higher-order trace formula", higher_trace_formula, 30},
        {"G-correction derivative identity", g_derivative_identity, 30},
        {"Abel transform", abel, 5},
        {"Witten index", witten, 5},
        {"Birman-Schwinger and inversion reconstructions", bs_and_reconstructions, 30},
        {"Schatten grid refinement", schatten_refinement, 600},
        {"Riesz composition", riesz_composition, 300},
    };
    int failed = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = items[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > items[i].limit) {
            o.pass = false;
            o.detail += ", over the " + fmt("%.0f", items[i].limit) + "s budget";
        }
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, items[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
    return failed == 0 ? 0 : 1;
}
