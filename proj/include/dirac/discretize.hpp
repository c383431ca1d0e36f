#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dirac/clifford.hpp"
#include "dirac/potential.hpp"
#include "dirac/types.hpp"

namespace dirac::discretize {

using clifford::CliffordRep;

/// Upper bound on (node count) * N for assembled operators.
inline constexpr std::size_t kDefaultMemoryCap = 8192;

/// Tensor-product Gauss-Legendre rule on [-R, R]^n.
struct Grid {
    int n = 0;
    int m = 0;
    double R = 0.0;
    std::vector<RVec> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

Grid build_grid(int n, double R, int m, int N = 1, std::size_t cap = kDefaultMemoryCap);

/// Weight-symmetrized Nystrom matrix with N x N blocks; diagonal blocks are zero.
struct DiscretizedOperator {
    Mat matrix;
    int N = 0;
    std::size_t nodes = 0;
    std::string kernel;
    Mat block(std::size_t i, std::size_t j) const {
        return matrix.block(static_cast<Eigen::Index>(i) * N, static_cast<Eigen::Index>(j) * N, N, N);
    }
};

/// Kernel <x>^{-delta} G_0(z;x,y) <y>^{-delta}; z == 0 selects the zero-energy limit kernel.
DiscretizedOperator assemble_weighted_resolvent(const CliffordRep& rep, const Grid& grid, cplx z, double delta);

/// Pointwise polar factors of V at the grid nodes.
std::vector<potential::PolarFactors> factorize_on_grid(const potential::MatrixPotential& V, const Grid& grid);

/// Kernel V2(x) G_0(z;x,y) V1(y)*; z == 0 selects the zero-energy limit kernel.
DiscretizedOperator assemble_bs(const CliffordRep& rep, const Grid& grid, cplx z,
                                const std::vector<potential::PolarFactors>& factors);
DiscretizedOperator assemble_bs(const CliffordRep& rep, const Grid& grid, cplx z, const potential::MatrixPotential& V);

/// Self-adjoint zero-energy variant U_V + V1 G_0(0) V1*.
DiscretizedOperator assemble_bs_selfadjoint_zero(const CliffordRep& rep, const Grid& grid,
                                                 const std::vector<potential::PolarFactors>& factors);

RVec singular_values(const Mat& A);
/// (sum sigma_k^p)^{1/p}, p >= 1
double schatten_norm(const Mat& A, double p);
double operator_norm(const Mat& A);

/// Default box half-width with C <R>^{-rho} <= tol (capped for super-polynomial profiles).
double default_box(const potential::MatrixPotential& V, double tol = 1e-6, double fallback = 6.0);

}  // namespace dirac::discretize
