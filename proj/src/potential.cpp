#include "dirac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dirac/clifford.hpp"

namespace dirac::potential {

PolarFactors polar_factorize(const Mat& V, double zero_tol) {
    if (V.rows() != V.cols()) throw std::invalid_argument("polar_factorize: matrix must be square");
    const double scale = std::max(1.0, V.norm());
    if ((V - V.adjoint()).norm() > 1e-13 * scale) throw std::invalid_argument("polar_factorize: matrix is not Hermitian");
    const Mat H = (V + V.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const RVec lam = es.eigenvalues();
    const Mat& Q = es.eigenvectors();
    const double cut = zero_tol * std::max(lam.cwiseAbs().maxCoeff(), 0.0);
    RVec root(lam.size()), sgn(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const bool zero = std::abs(lam(i)) <= cut;
        root(i) = zero ? 0.0 : std::sqrt(std::abs(lam(i)));
        sgn(i) = (zero || lam(i) > 0.0) ? 1.0 : -1.0;
    }
    PolarFactors f;
    f.V1 = Q * root.cast<cplx>().asDiagonal() * Q.adjoint();
    f.UV = Q * sgn.cast<cplx>().asDiagonal() * Q.adjoint();
    f.V1 = (f.V1 + f.V1.adjoint()) / 2.0;
    f.UV = (f.UV + f.UV.adjoint()) / 2.0;
    return f;
}

double japanese(const RVec& x) { return std::sqrt(1.0 + x.squaredNorm()); }

Mat named_matrix(const std::string& name, int n) {
    const auto rep = clifford::build_clifford(n);
    if (name == "identity") return Mat::Identity(rep.N, rep.N);
    if (name == "beta") return rep.beta();
    if (name == "sigma1") {
        Mat m = Mat::Zero(rep.N, rep.N);
        const int h = rep.N / 2;
        m.topRightCorner(h, h) = Mat::Identity(h, h);
        m.bottomLeftCorner(h, h) = Mat::Identity(h, h);
        return m;
    }
    if (name.rfind("alpha", 0) == 0) {
        const int j = std::stoi(name.substr(5));
        if (j < 1 || j > n + 1) throw std::invalid_argument("named_matrix: alpha index out of range");
        return rep.alpha(j);
    }
    throw std::invalid_argument("named_matrix: unknown matrix '" + name + "'");
}

namespace {
double max_entry(const Mat& M) { return M.cwiseAbs().maxCoeff(); }

void check_profile_matrix(const Mat& M, int n) {
    const int N = clifford::rep_size(n);
    if (M.rows() != N || M.cols() != N) throw std::invalid_argument("potential: matrix size does not match N");
    if ((M - M.adjoint()).norm() > 1e-13 * std::max(1.0, M.norm()))
        throw std::invalid_argument("potential: profile matrix must be Hermitian");
}
}  // namespace

MatrixPotential gaussian(int n, double amplitude, double width, const Mat& M) {
    check_profile_matrix(M, n);
    if (!(width > 0.0)) throw std::invalid_argument("gaussian: width must be positive");
    MatrixPotential V;
    V.n = n;
    V.N = static_cast<int>(M.rows());
    V.eval = [=](const RVec& x) -> Mat { return (amplitude * std::exp(-x.squaredNorm() / (width * width))) * M; };
    V.rho = std::numeric_limits<double>::infinity();
    V.C = std::abs(amplitude) * max_entry(M);
    V.family = "gaussian";
    return V;
}

MatrixPotential power_law(int n, double amplitude, double rho, const Mat& M) {
    check_profile_matrix(M, n);
    if (!(rho > 0.0)) throw std::invalid_argument("power_law: exponent must be positive");
    MatrixPotential V;
    V.n = n;
    V.N = static_cast<int>(M.rows());
    V.eval = [=](const RVec& x) -> Mat { return (amplitude * std::pow(japanese(x), -rho)) * M; };
    V.rho = rho;
    V.C = std::abs(amplitude) * max_entry(M);
    V.family = "power";
    return V;
}

MatrixPotential bump(int n, double amplitude, double radius, const Mat& M) {
    check_profile_matrix(M, n);
    if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be positive");
    MatrixPotential V;
    V.n = n;
    V.N = static_cast<int>(M.rows());
    V.eval = [=](const RVec& x) -> Mat {
        const double t = 1.0 - x.squaredNorm() / (radius * radius);
        return (t > 0.0 ? amplitude * t * t : 0.0) * M;
    };
    V.rho = std::numeric_limits<double>::infinity();
    V.C = std::abs(amplitude) * max_entry(M);
    V.family = "bump";
    return V;
}

MatrixPotential scaled(const MatrixPotential& V, double c) {
    MatrixPotential out = V;
    auto f = V.eval;
    out.eval = [f, c](const RVec& x) -> Mat { return c * f(x); };
    out.C = std::abs(c) * V.C;
    return out;
}

namespace {
double get_number(const nlohmann::json& p, const std::string& key, const std::string& path) {
    if (!p.contains(key)) throw std::invalid_argument(path + "/" + key + ": missing required parameter");
    if (!p.at(key).is_number()) throw std::invalid_argument(path + "/" + key + ": expected a number");
    return p.at(key).get<double>();
}

Mat parse_matrix(const nlohmann::json& m, int n, const std::string& path) {
    if (m.is_string()) return named_matrix(m.get<std::string>(), n);
    if (!m.is_array()) throw std::invalid_argument(path + ": expected a matrix name or an array of rows");
    const int N = clifford::rep_size(n);
    if (static_cast<int>(m.size()) != N) throw std::invalid_argument(path + ": expected " + std::to_string(N) + " rows");
    Mat M(N, N);
    for (int i = 0; i < N; ++i) {
        const auto& row = m[i];
        if (!row.is_array() || static_cast<int>(row.size()) != N)
            throw std::invalid_argument(path + "/" + std::to_string(i) + ": expected " + std::to_string(N) + " entries");
        for (int j = 0; j < N; ++j) {
            const auto& e = row[j];
            const std::string ep = path + "/" + std::to_string(i) + "/" + std::to_string(j);
            if (e.is_number()) M(i, j) = e.get<double>();
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                M(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
            else throw std::invalid_argument(ep + ": expected a number or [re, im]");
        }
    }
    return M;
}
}  // namespace

MatrixPotential from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw std::invalid_argument(": potential specification must be an object");
    if (!spec.contains("family") || !spec["family"].is_string())
        throw std::invalid_argument("/family: missing required parameter");
    if (!spec.contains("n") || !spec["n"].is_number_integer()) throw std::invalid_argument("/n: missing required parameter");
    const int n = spec["n"].get<int>();
    if (n < 2) throw std::invalid_argument("/n: must be >= 2");
    const nlohmann::json params = spec.value("params", nlohmann::json::object());
    if (!params.is_object()) throw std::invalid_argument("/params: expected an object");
    const Mat M = parse_matrix(params.value("matrix", nlohmann::json("identity")), n, "/params/matrix");
    const std::string fam = spec["family"].get<std::string>();
    MatrixPotential V;
    if (fam == "gaussian") {
        V = gaussian(n, get_number(params, "amplitude", "/params"), params.value("width", 1.0), M);
    } else if (fam == "power") {
        V = power_law(n, get_number(params, "amplitude", "/params"), get_number(params, "rho", "/params"), M);
    } else if (fam == "bump") {
        V = bump(n, get_number(params, "amplitude", "/params"), params.value("radius", 1.0), M);
    } else {
        throw std::invalid_argument("/family: unknown family '" + fam + "'");
    }
    if (params.contains("eps")) V.eps = get_number(params, "eps", "/params");
    V.description = spec.dump();
    return V;
}

Hypothesis parse_hypothesis(const std::string& s) {
    if (s == "3.1") return Hypothesis::H3_1;
    if (s == "7.1") return Hypothesis::H7_1;
    if (s == "9.13") return Hypothesis::H9_13;
    if (s == "12.1") return Hypothesis::H12_1;
    throw std::invalid_argument("unknown decay hypothesis '" + s + "'");
}

std::string hypothesis_name(Hypothesis h) {
    switch (h) {
    case Hypothesis::H3_1: return "3.1";
    case Hypothesis::H7_1: return "7.1";
    case Hypothesis::H9_13: return "9.13";
    case Hypothesis::H12_1: return "12.1";
    }
    return "?";
}

double required_exponent(Hypothesis h, int n, double eps) {
    switch (h) {
    case Hypothesis::H3_1: return 1.0 + eps;
    case Hypothesis::H7_1: return n + eps;
    case Hypothesis::H9_13: return n + eps;
    case Hypothesis::H12_1: return n + 1.0 + eps;
    }
    return 0.0;
}

DecayReport decay_report(const MatrixPotential& V, Hypothesis h, const std::vector<RVec>& samples) {
    if (samples.empty()) throw std::invalid_argument("decay_report: empty sample set");
    DecayReport rpt;
    rpt.hypothesis = h;
    rpt.rho_required = required_exponent(h, V.n, V.eps);
    rpt.declared_ok = V.rho >= rpt.rho_required;
    rpt.samples_ok = true;
    rpt.hermitian_ok = true;

    std::vector<std::pair<double, double>> radius_ratio;
    for (const RVec& x : samples) {
        const Mat v = V.eval(x);
        if ((v - v.adjoint()).norm() > 1e-13 * std::max(1.0, v.norm())) rpt.hermitian_ok = false;
        const double m = v.cwiseAbs().maxCoeff();
        if (!std::isfinite(m)) {
            rpt.samples_ok = false;
            continue;
        }
        const double jx = japanese(x);
        const double bound = std::isinf(V.rho) ? V.C : V.C * std::pow(jx, -V.rho);
        if (m > bound * (1.0 + 1e-12)) rpt.samples_ok = false;
        const double weighted = m * std::pow(jx, rpt.rho_required);
        rpt.fitted_constant = std::max(rpt.fitted_constant, weighted);
        radius_ratio.push_back({x.norm(), weighted});
    }
    rpt.worst_ratio = V.C > 0.0 ? rpt.fitted_constant / V.C : (rpt.fitted_constant > 0.0 ? INFINITY : 0.0);

    std::sort(radius_ratio.begin(), radius_ratio.end());
    const std::size_t outer = std::max<std::size_t>(1, radius_ratio.size() / 10);
    double inner_max = 0.0, outer_max = 0.0;
    for (std::size_t i = 0; i < radius_ratio.size(); ++i) {
        if (i + outer < radius_ratio.size()) inner_max = std::max(inner_max, radius_ratio[i].second);
        else outer_max = std::max(outer_max, radius_ratio[i].second);
    }
    rpt.tail_growth = inner_max > 0.0 ? outer_max / inner_max : (outer_max > 0.0 ? INFINITY : 0.0);
    rpt.pass = rpt.declared_ok && rpt.samples_ok && rpt.hermitian_ok && rpt.tail_growth <= 1.0 + 1e-9;
    return rpt;
}

std::vector<RVec> radial_samples(int n, double rmax, int shells, int per_shell, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<RVec> out{RVec::Zero(n)};
    for (int s = 1; s <= shells; ++s) {
        const double r = rmax * s / shells;
        for (int k = 0; k < per_shell; ++k) {
            RVec d(n);
            for (int i = 0; i < n; ++i) d(i) = g(rng);
            out.push_back(r * d / d.norm());
        }
    }
    return out;
}

}  // namespace dirac::potential
