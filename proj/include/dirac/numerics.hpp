#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dirac/types.hpp"

namespace dirac::numerics {

/// m-point Gauss-Legendre rule on [a, b].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m, double a = -1.0, double b = 1.0);

/// Finite-difference weights for the d-th derivative at x0 from the given nodes (Fornberg recursion).
std::vector<double> fd_weights(int d, double x0, const std::vector<double>& nodes);

/// d-th derivative of an analytic f at z by a centered stencil of 2*half+1 points, step h along the real axis.
cplx fd_derivative(const std::function<cplx(cplx)>& f, cplx z, int d, double h, int half = 4);

/// Haar-random unitary of size d.
template <class Rng>
Mat random_unitary(int d, Rng& rng);

/// Complex Ginibre matrix with E|m_ij|^2 = 1.
template <class Rng>
Mat ginibre(int rows, int cols, Rng& rng);

}  // namespace dirac::numerics

#include "dirac/numerics_impl.hpp"
