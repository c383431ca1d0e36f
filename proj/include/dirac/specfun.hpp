#pragma once

#include "dirac/types.hpp"

namespace dirac::specfun {

inline constexpr double kEulerGamma = 0.577215664901532861;
/// |zeta| at which hankel1 switches from the power series to the large-argument expansion.
inline constexpr double kAsymptoticRadius = 25.0;
inline constexpr int kSeriesCap = 200;

/// psi(k) = -gamma + sum_{m<k} 1/m, k >= 1.
double digamma_int(int k);

/// Working precision used for the power series at zeta (cancellation grows like e^{|zeta| + Im zeta}).
enum class Precision { Double, Quad, Extended };
Precision series_precision(cplx zeta);

/// J_nu by its power series; nu integer or half-integer (negative half-integers allowed).
cplx bessel_j(double nu, cplx zeta);

/// Y_n for integer n >= 0 by the logarithmic series (digamma form; n = 0 uses the harmonic-number form).
cplx bessel_y(int n, cplx zeta);

/// Y_0 written with psi(k+1) + psi(n+k+1) like the n >= 1 series; used as a cross-check of bessel_y(0, .).
cplx bessel_y0_digamma_form(cplx zeta);

/// H^(1)_nu: half-integer orders by the terminating closed form, integer orders by
/// J + iY for |zeta| < kAsymptoticRadius and by the asymptotic expansion beyond.
/// Negative orders use H_{-nu} = e^{i nu pi} H_nu.
cplx hankel1(double nu, cplx zeta);

/// H^(1)_nu through the power series only (J + iY for integer nu, J_nu and J_{-nu} for half-integer nu).
cplx hankel1_series(double nu, cplx zeta);

/// Terminating closed form for nu = j + 1/2, j >= 0.
cplx hankel1_halfint(double nu, cplx zeta);

struct AsymptoticValue {
    cplx value;
    double remainder_scale = 0.0;  // |last retained term| of the bracketed sum
    int terms = 0;
};

/// p-term large-argument expansion; refuses |zeta| < kAsymptoticRadius.
AsymptoticValue hankel1_asymptotic(double nu, cplx zeta, int p);

/// Same expansion without the radius guard, truncated at the smallest term or at 1e-17 relative.
AsymptoticValue hankel1_asymptotic_auto(double nu, cplx zeta);

/// Throws unless 2*nu is an integer.
int twice_order(double nu);

}  // namespace dirac::specfun
