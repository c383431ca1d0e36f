#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dirac/types.hpp"

namespace dirac::ssf {

using Rational = boost::multiprecision::cpp_rational;

/// Hermitian pair (S0, S = S0 + V).
struct MatrixPair {
    Mat S0;
    Mat V;
    Mat S() const { return S0 + V; }
    int dim() const { return static_cast<int>(S0.rows()); }
};

/// Validates shapes and Hermiticity (1e-13, relative to the largest entry).
MatrixPair make_pair(const Mat& S0, const Mat& V);

RVec eigenvalues(const Mat& H);

/// xi(lambda) = #{eig(S0) <= lambda} - #{eig(S) <= lambda}; *collision is set when an eigenvalue is within 1e-12.
int ssf_count_oracle(const MatrixPair& pair, double lambda, bool* collision = nullptr);

/// F(z) = ln det_{m+1}(I + B(z)), B(z) = V (S0 - z)^{-1}, principal-log sum over eigenvalues of B.
cplx perturbation_logdet(int m, cplx z, const MatrixPair& pair);
/// G_m(z) = sum_{j=1}^m (-1)^j tr(B(z)^j) / j
cplx g_correction(int m, cplx z, const MatrixPair& pair);

/// c * R0^{e_0} V R0^{e_1} V ... V R0^{e_L}, R0 = (S0 - z)^{-1}.
struct OperatorWord {
    std::vector<int> exponents;
    Rational coeff = 1;
};

/// Linear combination of OperatorWords with like terms merged.
class WordSum {
public:
    void add(const std::vector<int>& exponents, const Rational& c);
    WordSum derivative() const;  // d/dz R0^p = p R0^{p+1}
    cplx trace(cplx z, const MatrixPair& pair) const;
    std::vector<OperatorWord> words() const;
    std::size_t size() const { return terms_.size(); }

private:
    std::map<std::vector<int>, Rational> terms_;
};

/// sum_{i=1}^m (-1)^i R0 B^i as a WordSum.
WordSum g_prime_words(int m);
/// tr of the (m-1)-fold symbolic derivative of sum_{i=1}^m (-1)^i R0 B^i, i.e. the m-th derivative of G_m.
cplx g_deriv_paper(int m, cplx z, const MatrixPair& pair);

enum class Method { Counting, Krein, EqMain };
std::string method_name(Method m);
Method parse_method(const std::string& s);

struct SSFTable {
    std::vector<double> lambdas;
    std::vector<double> xi;          // NaN at flagged points
    std::vector<bool> flags;         // within min_gap of an eigenvalue
    std::vector<double> branch_log;  // accumulated argument / pi at the smallest eps
    std::vector<double> eps;
    Method method = Method::Krein;
    int m = 0;
    double min_gap = 0.05;
    double anchor = 0.0;
    long samples = 0;  // determinant evaluations spent on phase tracking
};

inline const std::vector<double> kDefaultEpsSchedule{1e-2, 5e-3, 2.5e-3};

/// Boundary values of xi on an increasing grid; Richardson extrapolation over eps.
SSFTable ssf_boundary(const MatrixPair& pair, const std::vector<double>& lambdas,
                      const std::vector<double>& eps_schedule = kDefaultEpsSchedule, Method method = Method::Krein,
                      int m = 1, double min_gap = 0.05);

/// |tr((S-z)^{-m} - (S0-z)^{-m}) + m int xi(l) (l-z)^{-m-1} dl|, xi from the counting oracle.
double trace_formula_residual(int m, const MatrixPair& pair, cplx z);

/// Left and right sides of tr(f(S) - f(S0)) = int xi f' for smooth f.
std::pair<double, double> krein_identity(const MatrixPair& pair, const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime);

/// (1/pi) int_{-sqrt(l)}^{sqrt(l)} xi(nu) (l - nu^2)^{-1/2} dnu through nu = sqrt(l) sin(theta);
/// breakpoints (discontinuities of xi) split the theta range.
double abel_transform(const std::function<double(double)>& xi, double lambda,
                      const std::vector<double>& breakpoints = {}, int nodes = 64);

struct AbelLimit {
    double value = 0.0;
    std::vector<double> lambdas;
    std::vector<double> values;
    bool converged = false;
};

/// lambda -> 0+ limit of abel_transform along lambda = 10^{-2j}.
AbelLimit abel_zero_limit(const std::function<double(double)>& xi, const std::vector<double>& breakpoints = {0.0},
                          double tol = 1e-9);

struct WittenResult {
    int k = 1;
    std::vector<double> lambda_schedule;
    std::vector<double> scaled_traces;
    double extrapolated = 0.0;
    double variance = 0.0;
    int exact = 0;  // dim ker T - dim ker T*
};

inline const std::vector<double> kDefaultWittenSchedule{-1.0, -0.5, -0.25, -0.1, -1e-2, -1e-3};

WittenResult witten_index(const Mat& T, int k, const std::vector<double>& schedule = kDefaultWittenSchedule);

}  // namespace dirac::ssf
