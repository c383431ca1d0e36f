#pragma once

#include <string>
#include <vector>

#include "dirac/clifford.hpp"
#include "dirac/discretize.hpp"
#include "dirac/potential.hpp"
#include "dirac/ssf.hpp"
#include "dirac/types.hpp"

namespace dirac::resolvalg {

struct RieszProjection {
    Mat P;
    cplx lambda0{0.0, 0.0};
    double radius = 0.0;
    int rank = 0;             // round(tr P)
    int eigen_count = 0;      // eigenvalues inside the circle (cross-check)
    int points = 0;           // trapezoid nodes used
    double idempotency = 0.0; // |P^2 - P|_max
    double commutator = 0.0;  // |AP - PA|_max
};

/// (2 pi i)^{-1} contour integral of (z - A)^{-1} over |z - lambda0| = radius; trapezoid rule from 64 nodes,
/// doubled until |P^2 - P| <= 1e-11.
RieszProjection riesz_projection(const Mat& A, cplx lambda0, double radius);

/// Projection onto the eigenvectors inside the circle built from an eigen-decomposition (diagonalizable A).
Mat eigen_group_projection(const Mat& A, cplx lambda0, double radius);

struct JNResult {
    Mat a;            // P - P (A + P)^{-1} P
    Mat basis;        // orthonormal basis of ran P
    Mat a_reduced;    // basis* a basis
    bool invertible = false;
    Mat Ainv;         // valid when invertible
    double residual = 0.0;  // |A Ainv - I|_max
};

/// Inversion of A through the reduced operator a on ran P; throws if A + P is singular.
JNResult jn_invert(const Mat& A, const Mat& P, double tol = 1e-10);

struct FeshbachResult {
    Mat b;  // b11 - b12 b22^{-1} b21
    bool invertible = false;
    Mat inverse;
    double residual = 0.0;  // against direct inversion of the assembled block matrix
};

FeshbachResult feshbach_invert(const Mat& b11, const Mat& b12, const Mat& b21, const Mat& b22, double tol = 1e-10);

/// Relative residuals of the factorized resolvent identities for S = S0 + V1* V2.
struct BSResiduals {
    double resolvent = 0.0;        // R = R0 - [V1 R0(conj z)]* [I + V2 R0 V1*]^{-1} V2 R0
    double difference_left = 0.0;  // R - R0 = -[V1 R(conj z)]* V2 R0
    double difference_right = 0.0; // R - R0 = -[V1 R0(conj z)]* V2 R
    double inverse_roles = 0.0;    // R0 = R - [V1 R(conj z)]* [I - V2 R V1*]^{-1} V2 R
    double v1_sandwich = 0.0;      // V1 R V1* = V1 R0 V1* - V1 R V1* V2 R0 V1*
    double v1_product = 0.0;       // V1 R V1* = V1 R0 V1* [I + V2 R0 V1*]^{-1}
    double v2_identity = 0.0;      // V2 R V1* = I - [I + V2 R0 V1*]^{-1}
    bool singular = false;
    double max() const;
};

BSResiduals bs_residuals(const Mat& S0, const Mat& V1, const Mat& V2, cplx z);
/// Factors from the polar decomposition of the Hermitian V.
BSResiduals bs_residuals(const ssf::MatrixPair& pair, cplx z);

struct ThresholdReport {
    bool exceptional = false;
    double tol = 1e-3;
    double min_abs_eigenvalue = 0.0;
    std::vector<double> near_eigenvalues;  // smallest in modulus, up to 6
    double hermitian_residual = 0.0;
    std::vector<CVec> phi;                 // candidate vectors (grid-weighted coefficients)
    std::vector<CVec> psi;                 // psi_0 at the grid nodes
    std::vector<double> psi_l2;            // over the full box
    std::vector<double> psi_l2_inner;      // over the half-width box
    std::string classification() const { return exceptional ? "exceptional" : "regular"; }
};

/// Spectrum of the discrete U_V + V1 G_0(0) V1* near 0.
ThresholdReport threshold_classify(const clifford::CliffordRep& rep, const discretize::Grid& grid,
                                   const std::vector<potential::PolarFactors>& factors, double tol = 1e-3);

struct RefinedThreshold {
    ThresholdReport coarse;
    ThresholdReport fine;
    bool refinement_available = false;
    bool grid_too_coarse = false;  // classification differs between m and 2m
};

RefinedThreshold threshold_classify_refined(const clifford::CliffordRep& rep, const potential::MatrixPotential& V,
                                            double R, int m, double tol = 1e-3,
                                            std::size_t cap = discretize::kDefaultMemoryCap);

struct SweepPoint {
    double amplitude = 0.0;
    double min_abs_eigenvalue = 0.0;
    bool exceptional = false;
};

/// Classification of c V over the given couplings c.
std::vector<SweepPoint> amplitude_sweep(const clifford::CliffordRep& rep, const discretize::Grid& grid,
                                        const potential::MatrixPotential& V, const std::vector<double>& amplitudes,
                                        double tol = 1e-3);

struct GrowthFit {
    std::vector<double> etas;
    std::vector<double> norms;  // |[I + V2 R0(i eta) V1*]^{-1}|
    double exponent = 0.0;      // least-squares slope of -log norm against log eta
};

/// Diagnostic growth of the inverse Birman-Schwinger operator as z = i eta -> 0.
GrowthFit bs_inverse_growth(const clifford::CliffordRep& rep, const discretize::Grid& grid,
                            const std::vector<potential::PolarFactors>& factors, const std::vector<double>& etas);

}  // namespace dirac::resolvalg
