#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dirac/types.hpp"

namespace dirac::potential {

/// Pointwise polar data V = V1 U_V V1 with V1 = |V|^{1/2} and U_V self-adjoint unitary.
struct PolarFactors {
    Mat V1;
    Mat UV;
    Mat V2() const { return UV * V1; }
};

/// Eigenvalues with |lambda| <= zero_tol * max|lambda| are treated as kernel (sign := +1).
PolarFactors polar_factorize(const Mat& V, double zero_tol = 1e-14);

/// Hermitian matrix-valued potential with a declared pointwise bound |V_lm(x)| <= C <x>^{-rho}.
struct MatrixPotential {
    int n = 0;
    int N = 0;
    std::function<Mat(const RVec&)> eval;
    double rho = 0.0;   // declared decay exponent (infinity for super-polynomial profiles)
    double C = 0.0;     // declared constant
    double eps = 0.5;   // surplus exponent used by the decay hypotheses
    std::string family;
    std::string description;
};

/// <x> = (1 + |x|^2)^{1/2}
double japanese(const RVec& x);

/// Named constant N x N matrices: "identity", "beta", "alpha<j>", "sigma1" (sigma_1 tensor I_{N/2}).
Mat named_matrix(const std::string& name, int n);

MatrixPotential gaussian(int n, double amplitude, double width, const Mat& M);
MatrixPotential power_law(int n, double amplitude, double rho, const Mat& M);
/// amplitude * (1 - |x|^2/radius^2)^2 on the ball, zero outside.
MatrixPotential bump(int n, double amplitude, double radius, const Mat& M);

/// Build from {"family": ..., "params": {...}, "n": int}; throws std::invalid_argument with a JSON pointer.
MatrixPotential from_json(const nlohmann::json& spec);

MatrixPotential scaled(const MatrixPotential& V, double c);

enum class Hypothesis { H3_1, H7_1, H9_13, H12_1 };
Hypothesis parse_hypothesis(const std::string& s);
std::string hypothesis_name(Hypothesis h);
/// Decay exponent a hypothesis demands (strict inequalities are met with the surplus eps).
double required_exponent(Hypothesis h, int n, double eps);

struct DecayReport {
    Hypothesis hypothesis = Hypothesis::H3_1;
    double rho_required = 0.0;
    double worst_ratio = 0.0;       // max |V_lm(x)| <x>^{rho_required} / C
    double fitted_constant = 0.0;   // max |V_lm(x)| <x>^{rho_required}
    double tail_growth = 0.0;       // outer-shell max ratio / overall max ratio
    bool declared_ok = false;       // declared rho meets the requirement
    bool samples_ok = false;        // declared bound holds at every sample
    bool hermitian_ok = false;
    bool pass = false;
};

DecayReport decay_report(const MatrixPotential& V, Hypothesis h, const std::vector<RVec>& samples);

/// Radial sample set: shells at radii r_k along random directions (deterministic in seed).
std::vector<RVec> radial_samples(int n, double rmax, int shells, int per_shell, unsigned long long seed);

}  // namespace dirac::potential
