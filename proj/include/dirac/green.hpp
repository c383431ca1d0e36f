#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dirac/clifford.hpp"
#include "dirac/types.hpp"

namespace dirac::green {

using clifford::CliffordRep;
using Rational = boost::multiprecision::cpp_rational;

enum class Regime { Series, Asymptotic, ClosedForm, ZeroLimit };
std::string regime_name(Regime r);

/// Scalar parts of a kernel of the form a I_N + b alpha.(x-y)/|x-y|.
struct KernelCoeffs {
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
};

struct KernelMatrix {
    Mat value;
    int n = 0;
    int N = 0;
    cplx z{0.0, 0.0};
    bool zero_limit = false;
    RVec x, y;
    Regime regime = Regime::Series;
};

struct DerivativeKernel {
    int r = 0;
    Mat value;
    Regime regime = Regime::Series;
};

/// Assemble a I + b alpha.omega.
Mat assemble(const CliffordRep& rep, const KernelCoeffs& c, const RVec& omega);

/// Coefficients of G_0(z;x,y) at |x-y| = rho from the Hankel representation (any n >= 2).
KernelCoeffs green0_coeffs(int n, cplx z, double rho);
/// Elementary n = 3 form e^{iz rho}/(4 pi rho) [z I + (z + i/rho) alpha.omega].
KernelCoeffs green0_coeffs_n3(cplx z, double rho);

/// Free massless Green's matrix; n = 3 takes the elementary fast path.
KernelMatrix green0(const CliffordRep& rep, cplx z, const RVec& x, const RVec& y);
/// Same value through the Hankel representation for every n.
KernelMatrix green0_generic(const CliffordRep& rep, cplx z, const RVec& x, const RVec& y);

/// i 2^{-1} pi^{-n/2} Gamma(n/2)
double limit0_coefficient(int n);
KernelCoeffs green0_limit0_coeffs(int n, double rho);
KernelMatrix green0_limit0(const CliffordRep& rep, const RVec& x, const RVec& y);

/// Index bookkeeping of the odd-dimensional derivative series.
int k_minus(int r);
int k_plus(int r);
int delta_n(int n, int r);

/// d^r/dz^r of the kernel coefficients, regime chosen by |z| rho against 1.
KernelCoeffs deriv_coeffs(int n, int r, cplx z, double rho, Regime* used = nullptr);
/// Small-argument route: explicit odd-n series, log-power series for even n.
KernelCoeffs deriv_coeffs_series(int n, int r, cplx z, double rho);
/// Term-wise differentiation of the power/log series of zeta^{n/2} H_mu(zeta) (both parities).
KernelCoeffs deriv_coeffs_termwise(int n, int r, cplx z, double rho);
/// Large-argument route: closed forms from d/dzeta[zeta^a H_mu] = (a-mu) zeta^{a-1} H_mu + zeta^a H_{mu-1}.
KernelCoeffs deriv_coeffs_closed(int n, int r, cplx z, double rho);

DerivativeKernel green0_deriv(const CliffordRep& rep, int r, cplx z, const RVec& x, const RVec& y);

struct OddDimCoeffs {
    int n = 0;
    std::vector<Rational> d;
    std::vector<Rational> dprime;
};

/// Exact d_j, d'_j for j = 0..2n (odd 3 <= n <= 13).
OddDimCoeffs odd_dim_coeffs(int n);
/// c_j = sum_{k >= m-j} (m+k)!/(k!(m-k)!) (-2)^{-k} / (k+j-m)!
Rational odd_coefficient(int m, int j);

struct RegimeBound {
    int samples = 0;
    double max_ratio = 0.0;  // fitted constant
    double min_ratio = 0.0;
    int nonfinite = 0;
};

struct BoundReport {
    int n = 0;
    int r = 0;
    cplx z{0.0, 0.0};
    double delta = 0.5;
    RegimeBound small;  // |z||x-y| <= 1
    RegimeBound large;  // |z||x-y| >= 1
};

/// Envelope of the derivative-kernel estimate at separation rho.
double envelope(int n, int r, cplx z, double rho, double delta = 0.5);

BoundReport kernel_bound_report(const CliffordRep& rep, cplx z, int r,
                                const std::vector<std::pair<RVec, RVec>>& samples, double delta = 0.5);

/// Massive kernel with k = (z^2 - m^2)^{1/2}, Im k > 0.
KernelMatrix green0_massive(const CliffordRep& rep, double m, cplx z, const RVec& x, const RVec& y);

}  // namespace dirac::green
