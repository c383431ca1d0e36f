#include "dirac/discretize.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "dirac/green.hpp"
#include "dirac/numerics.hpp"

namespace dirac::discretize {

Grid build_grid(int n, double R, int m, int N, std::size_t cap) {
    if (n < 1) throw std::invalid_argument("build_grid: n must be >= 1");
    if (m < 2) throw std::invalid_argument("build_grid: need m >= 2 nodes per axis");
    if (!(R > 0.0)) throw std::invalid_argument("build_grid: R must be positive");
    const double total = std::pow(static_cast<double>(m), n) * N;
    if (total > static_cast<double>(cap))
        throw std::length_error("build_grid: m^n * N = " + std::to_string(static_cast<long long>(total)) +
                                " exceeds the memory cap " + std::to_string(cap));
    const auto [x1, w1] = numerics::gauss_legendre(m, -R, R);
    Grid g;
    g.n = n;
    g.m = m;
    g.R = R;
    const std::size_t count = static_cast<std::size_t>(std::llround(std::pow(m, n)));
    g.nodes.reserve(count);
    g.weights.reserve(count);
    std::vector<int> idx(n, 0);
    for (std::size_t c = 0; c < count; ++c) {
        RVec x(n);
        double w = 1.0;
        for (int d = 0; d < n; ++d) {
            x(d) = x1[idx[d]];
            w *= w1[idx[d]];
        }
        g.nodes.push_back(x);
        g.weights.push_back(w);
        for (int d = n - 1; d >= 0; --d) {
            if (++idx[d] < m) break;
            idx[d] = 0;
        }
    }
    return g;
}

namespace {

green::KernelCoeffs kernel_coeffs(int n, cplx z, double rho) {
    if (z == cplx(0.0, 0.0)) return green::green0_limit0_coeffs(n, rho);
    if (n == 3) return green::green0_coeffs_n3(z, rho);
    return green::green0_coeffs(n, z, rho);
}

// Fill blocks (i,j), i != j, with left(i) * G_0(z; x_i, x_j) * right(j) * sqrt(w_i w_j).
template <class Left, class Right>
Mat assemble_sandwich(const CliffordRep& rep, const Grid& grid, cplx z, Left&& left, Right&& right) {
    if (grid.n != rep.n) throw std::invalid_argument("assemble: grid and representation dimensions differ");
    if (z.imag() < 0.0) throw std::domain_error("assemble: Im z < 0");
    const int N = rep.N;
    const Eigen::Index M = static_cast<Eigen::Index>(grid.size());
    Mat out = Mat::Zero(M * N, M * N);
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index i = 0; i < M; ++i) {
        for (Eigen::Index j = i + 1; j < M; ++j) {
            const RVec d = grid.nodes[i] - grid.nodes[j];
            const double rho = d.norm();
            const green::KernelCoeffs c = kernel_coeffs(rep.n, z, rho);
            const Mat sym = clifford::dirac_symbol(rep, d / rho);
            const double sw = std::sqrt(grid.weights[i] * grid.weights[j]);
            Mat gij = c.b * sym;
            gij.diagonal().array() += c.a;
            Mat gji = -c.b * sym;
            gji.diagonal().array() += c.a;
            out.block(i * N, j * N, N, N) = sw * (left(i) * gij * right(j));
            out.block(j * N, i * N, N, N) = sw * (left(j) * gji * right(i));
        }
    }
    return out;
}

}  // namespace

DiscretizedOperator assemble_weighted_resolvent(const CliffordRep& rep, const Grid& grid, cplx z, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("assemble_weighted_resolvent: delta must be positive");
    const int N = rep.N;
    std::vector<double> wt(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) wt[i] = std::pow(potential::japanese(grid.nodes[i]), -delta);
    const Mat id = Mat::Identity(N, N);
    auto side = [&](Eigen::Index i) -> Mat { return wt[i] * id; };
    DiscretizedOperator op;
    op.matrix = assemble_sandwich(rep, grid, z, side, side);
    op.N = N;
    op.nodes = grid.size();
    op.kernel = "weighted_resolvent";
    return op;
}

std::vector<potential::PolarFactors> factorize_on_grid(const potential::MatrixPotential& V, const Grid& grid) {
    if (V.n != grid.n) throw std::invalid_argument("factorize_on_grid: potential and grid dimensions differ");
    std::vector<potential::PolarFactors> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = potential::polar_factorize(V.eval(grid.nodes[i]));
    return f;
}

DiscretizedOperator assemble_bs(const CliffordRep& rep, const Grid& grid, cplx z,
                                const std::vector<potential::PolarFactors>& factors) {
    if (factors.size() != grid.size()) throw std::invalid_argument("assemble_bs: factor count differs from grid size");
    for (const auto& f : factors)
        if (f.V1.rows() != rep.N) throw std::invalid_argument("assemble_bs: potential matrix size differs from N");
    std::vector<Mat> v2(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) v2[i] = factors[i].V2();
    DiscretizedOperator op;
    op.matrix = assemble_sandwich(
        rep, grid, z, [&](Eigen::Index i) -> const Mat& { return v2[i]; },
        [&](Eigen::Index j) -> Mat { return factors[j].V1.adjoint(); });
    op.N = rep.N;
    op.nodes = grid.size();
    op.kernel = "birman_schwinger";
    return op;
}

DiscretizedOperator assemble_bs(const CliffordRep& rep, const Grid& grid, cplx z, const potential::MatrixPotential& V) {
    if (V.N != rep.N || V.n != rep.n) throw std::invalid_argument("assemble_bs: potential does not match representation");
    return assemble_bs(rep, grid, z, factorize_on_grid(V, grid));
}

DiscretizedOperator assemble_bs_selfadjoint_zero(const CliffordRep& rep, const Grid& grid,
                                                 const std::vector<potential::PolarFactors>& factors) {
    if (factors.size() != grid.size()) throw std::invalid_argument("assemble_bs: factor count differs from grid size");
    DiscretizedOperator op;
    op.matrix = assemble_sandwich(
        rep, grid, 0.0, [&](Eigen::Index i) -> const Mat& { return factors[i].V1; },
        [&](Eigen::Index j) -> Mat { return factors[j].V1.adjoint(); });
    const int N = rep.N;
    for (std::size_t i = 0; i < grid.size(); ++i)
        op.matrix.block(static_cast<Eigen::Index>(i) * N, static_cast<Eigen::Index>(i) * N, N, N) = factors[i].UV;
    op.N = N;
    op.nodes = grid.size();
    op.kernel = "birman_schwinger_selfadjoint_zero";
    return op;
}

RVec singular_values(const Mat& A) {
    Eigen::BDCSVD<Mat> svd(A);
    return svd.singularValues();
}

double schatten_norm(const Mat& A, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
    const RVec s = singular_values(A);
    if (s.size() == 0) return 0.0;
    const double smax = s.maxCoeff();
    if (smax == 0.0) return 0.0;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s(k) / smax, p);
    return smax * std::pow(acc, 1.0 / p);
}

double operator_norm(const Mat& A) {
    const RVec s = singular_values(A);
    return s.size() ? s.maxCoeff() : 0.0;
}

double default_box(const potential::MatrixPotential& V, double tol, double fallback) {
    if (std::isinf(V.rho) || V.C == 0.0) return fallback;
    // C (1 + R^2)^{-rho/2} <= tol
    const double t = std::pow(V.C / tol, 2.0 / V.rho) - 1.0;
    return t > 0.0 ? std::sqrt(t) : 1.0;
}

}  // namespace dirac::discretize
