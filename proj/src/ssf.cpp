#include "dirac/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dirac/numerics.hpp"

namespace dirac::ssf {

namespace {

constexpr double kPi = std::numbers::pi;

void require_offaxis(cplx z, const char* who) {
    if (z.imag() == 0.0) throw std::domain_error(std::string(who) + ": z must be off the real axis");
}

double hermitian_defect(const Mat& H) {
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    return (H - H.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Mat free_resolvent(const MatrixPair& pair, cplx z) {
    Mat M = pair.S0;
    M.diagonal().array() -= z;
    return M.partialPivLu().inverse();
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

// Integral of a complex function over [a, b] by adaptive Gauss-Kronrod on real and imaginary parts.
cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double re = GK::integrate([&](double t) { return f(t).real(); }, a, b, 15, 1e-14);
    const double im = GK::integrate([&](double t) { return f(t).imag(); }, a, b, 15, 1e-14);
    return {re, im};
}

std::vector<double> merged_spectrum(const MatrixPair& pair) {
    RVec e0 = eigenvalues(pair.S0);
    RVec e1 = eigenvalues(pair.S());
    std::vector<double> all(e0.data(), e0.data() + e0.size());
    all.insert(all.end(), e1.data(), e1.data() + e1.size());
    std::sort(all.begin(), all.end());
    return all;
}

double distance_to(const std::vector<double>& sorted, double x) {
    double d = std::numeric_limits<double>::infinity();
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it != sorted.end()) d = std::min(d, *it - x);
    if (it != sorted.begin()) d = std::min(d, x - *(it - 1));
    return d;
}

// Neville extrapolation of values sampled at eps_i to eps = 0.
double extrapolate_zero(const std::vector<double>& eps, std::vector<double> v) {
    const std::size_t n = eps.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i) {
            const double a = eps[i], b = eps[i + level];
            v[i] = (a * v[i + 1] - b * v[i]) / (a - b);
        }
    return v[0];
}

// Phase of the boundary determinant at lambda + i eps, reduced mod 2 pi.
class PhaseProbe {
public:
    PhaseProbe(const MatrixPair& pair, Method method, int m) : pair_(pair), method_(method), m_(m) {}

    double operator()(double lambda, double eps) {
        ++count;
        const cplx z(lambda, eps);
        const Mat B = pair_.V * free_resolvent(pair_, z);
        const Eigen::Index d = B.rows();
        if (method_ == Method::Krein) {
            const cplx det = (Mat::Identity(d, d) + B).partialPivLu().determinant();
            return std::arg(det);
        }
        const cplx F = logdet_regularized(B, m_ + 1);
        return wrap_angle((F - g_from_b(B, m_)).imag());
    }

    static cplx logdet_regularized(const Mat& B, int k) {
        Eigen::ComplexEigenSolver<Mat> es(B, false);
        if (es.info() != Eigen::Success) throw std::runtime_error("perturbation_logdet: eigenvalue solver failed");
        cplx s(0.0, 0.0);
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            const cplx b = es.eigenvalues()(j);
            s += std::log(1.0 + b);
            cplx p = 1.0;
            for (int i = 1; i < k; ++i) {
                p *= -b;
                s += p / static_cast<double>(i);
            }
        }
        return s;
    }

    static cplx g_from_b(const Mat& B, int m) {
        cplx g(0.0, 0.0);
        Mat P = Mat::Identity(B.rows(), B.cols());
        for (int j = 1; j <= m; ++j) {
            P = P * B;
            g += (j % 2 ? -1.0 : 1.0) * P.trace() / static_cast<double>(j);
        }
        return g;
    }

    long count = 0;

private:
    const MatrixPair& pair_;
    Method method_;
    int m_;
};

// Continuous argument from a to b given the wrapped phase at a; bisects until increments are below pi/4.
double track(PhaseProbe& probe, double eps, double a, double pa, double b, double& pb, int depth = 0) {
    pb = probe(b, eps);
    const double d = wrap_angle(pb - pa);
    if (std::abs(d) <= kPi / 4.0 || depth > 60 || b - a < 1e-15 * std::max(1.0, std::abs(a))) return d;
    const double mid = 0.5 * (a + b);
    double pm = 0.0;
    const double d1 = track(probe, eps, a, pa, mid, pm, depth + 1);
    const double d2 = track(probe, eps, mid, pm, b, pb, depth + 1);
    return d1 + d2;
}

}  // namespace

MatrixPair make_pair(const Mat& S0, const Mat& V) {
    if (S0.rows() != S0.cols() || V.rows() != V.cols() || S0.rows() != V.rows())
        throw std::invalid_argument("make_pair: S0 and V must be square of equal size");
    if (hermitian_defect(S0) > 1e-13) throw std::invalid_argument("make_pair: S0 is not Hermitian");
    if (hermitian_defect(V) > 1e-13) throw std::invalid_argument("make_pair: V is not Hermitian");
    return {S0, V};
}

RVec eigenvalues(const Mat& H) {
    const Mat Hs = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(Hs, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

int ssf_count_oracle(const MatrixPair& pair, double lambda, bool* collision) {
    const RVec e0 = eigenvalues(pair.S0);
    const RVec e1 = eigenvalues(pair.S());
    int c0 = 0, c1 = 0;
    bool hit = false;
    for (Eigen::Index i = 0; i < e0.size(); ++i) {
        c0 += e0(i) <= lambda;
        hit = hit || std::abs(e0(i) - lambda) <= 1e-12;
    }
    for (Eigen::Index i = 0; i < e1.size(); ++i) {
        c1 += e1(i) <= lambda;
        hit = hit || std::abs(e1(i) - lambda) <= 1e-12;
    }
    if (collision) *collision = hit;
    return c0 - c1;
}

cplx perturbation_logdet(int m, cplx z, const MatrixPair& pair) {
    if (m < 1) throw std::invalid_argument("perturbation_logdet: m must be >= 1");
    require_offaxis(z, "perturbation_logdet");
    const Mat B = pair.V * free_resolvent(pair, z);
    return PhaseProbe::logdet_regularized(B, m + 1);
}

cplx g_correction(int m, cplx z, const MatrixPair& pair) {
    if (m < 1) throw std::invalid_argument("g_correction: m must be >= 1");
    require_offaxis(z, "g_correction");
    return PhaseProbe::g_from_b(pair.V * free_resolvent(pair, z), m);
}

void WordSum::add(const std::vector<int>& exponents, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

WordSum WordSum::derivative() const {
    WordSum out;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            std::vector<int> f = e;
            ++f[i];
            out.add(f, c * e[i]);
        }
    return out;
}

cplx WordSum::trace(cplx z, const MatrixPair& pair) const {
    require_offaxis(z, "WordSum::trace");
    int pmax = 0;
    for (const auto& [e, c] : terms_)
        for (int p : e) pmax = std::max(pmax, p);
    const Eigen::Index d = pair.S0.rows();
    std::vector<Mat> R{Mat::Identity(d, d), free_resolvent(pair, z)};
    for (int p = 2; p <= pmax; ++p) R.push_back(R[p - 1] * R[1]);
    cplx total(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        Mat W = R[e[0]];
        for (std::size_t i = 1; i < e.size(); ++i) W = W * pair.V * R[e[i]];
        total += static_cast<double>(c) * W.trace();
    }
    return total;
}

std::vector<OperatorWord> WordSum::words() const {
    std::vector<OperatorWord> out;
    for (const auto& [e, c] : terms_) out.push_back({e, c});
    return out;
}

WordSum g_prime_words(int m) {
    if (m < 1) throw std::invalid_argument("g_prime_words: m must be >= 1");
    WordSum s;
    for (int i = 1; i <= m; ++i) s.add(std::vector<int>(static_cast<std::size_t>(i) + 1, 1), i % 2 ? -1 : 1);
    return s;
}

cplx g_deriv_paper(int m, cplx z, const MatrixPair& pair) {
    require_offaxis(z, "g_deriv_paper");
    WordSum s = g_prime_words(m);
    for (int r = 1; r < m; ++r) s = s.derivative();
    return s.trace(z, pair);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Counting: return "counting";
        case Method::Krein: return "krein_boundary";
        case Method::EqMain: return "eq_main";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "counting") return Method::Counting;
    if (s == "krein" || s == "krein_boundary") return Method::Krein;
    if (s == "eqmain" || s == "eq_main") return Method::EqMain;
    throw std::invalid_argument("unknown ssf method '" + s + "'");
}

SSFTable ssf_boundary(const MatrixPair& pair, const std::vector<double>& lambdas, const std::vector<double>& eps_schedule,
                      Method method, int m, double min_gap) {
    if (lambdas.empty()) throw std::invalid_argument("ssf_boundary: empty grid");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] > lambdas[i - 1])) throw std::invalid_argument("ssf_boundary: grid must be increasing");
    if (method == Method::EqMain && m < 1) throw std::invalid_argument("ssf_boundary: eq_main needs m >= 1");
    const std::vector<double> spec = merged_spectrum(pair);

    SSFTable t;
    t.lambdas = lambdas;
    t.eps = eps_schedule;
    t.method = method;
    t.m = method == Method::EqMain ? m : 0;
    t.min_gap = min_gap;
    const std::size_t G = lambdas.size();
    t.flags.resize(G);
    for (std::size_t g = 0; g < G; ++g) t.flags[g] = distance_to(spec, lambdas[g]) < min_gap;

    if (method == Method::Counting) {
        for (std::size_t g = 0; g < G; ++g)
            t.xi.push_back(t.flags[g] ? std::nan("") : ssf_count_oracle(pair, lambdas[g]));
        t.branch_log.assign(G, 0.0);
        return t;
    }
    if (eps_schedule.empty()) throw std::invalid_argument("ssf_boundary: empty eps schedule");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0)) throw std::invalid_argument("ssf_boundary: eps must be positive");
        if (i && !(eps_schedule[i] < eps_schedule[i - 1]))
            throw std::invalid_argument("ssf_boundary: eps schedule must decrease");
    }

    t.anchor = std::min(lambdas.front(), (spec.empty() ? 0.0 : spec.front()) - 1.0);
    std::vector<std::vector<double>> per_eps(eps_schedule.size(), std::vector<double>(G));
    PhaseProbe probe(pair, method, m);
    for (std::size_t e = 0; e < eps_schedule.size(); ++e) {
        const double eps = eps_schedule[e];
        // Step cap keeps each eigenvalue factor's phase increment below ~1/4 rad.
        auto step_cap = [&](double x) { return 0.25 * std::max(eps, distance_to(spec, x)); };
        double x = t.anchor;
        double px = probe(x, eps);
        double acc = px - 2.0 * kPi * std::round(px / (2.0 * kPi));
        for (std::size_t g = 0; g < G; ++g) {
            while (x < lambdas[g]) {
                const double nx = std::min(lambdas[g], x + step_cap(x));
                double pn = 0.0;
                acc += track(probe, eps, x, px, nx, pn);
                x = nx;
                px = pn;
            }
            per_eps[e][g] = acc / kPi;
        }
    }
    t.samples = probe.count;
    t.branch_log = per_eps.back();
    for (std::size_t g = 0; g < G; ++g) {
        if (t.flags[g]) {
            t.xi.push_back(std::nan(""));
            continue;
        }
        std::vector<double> v(eps_schedule.size());
        for (std::size_t e = 0; e < eps_schedule.size(); ++e) v[e] = per_eps[e][g];
        t.xi.push_back(extrapolate_zero(eps_schedule, v));
    }
    return t;
}

double trace_formula_residual(int m, const MatrixPair& pair, cplx z) {
    if (m < 1) throw std::invalid_argument("trace_formula_residual: m must be >= 1");
    require_offaxis(z, "trace_formula_residual");
    const Eigen::Index d = pair.S0.rows();
    auto neg_power_trace = [&](const Mat& H) {
        Mat M = H;
        M.diagonal().array() -= z;
        const Mat Rz = M.partialPivLu().inverse();
        Mat P = Mat::Identity(d, d);
        for (int i = 0; i < m; ++i) P = P * Rz;
        return P.trace();
    };
    const cplx lhs = neg_power_trace(pair.S()) - neg_power_trace(pair.S0);
    const std::vector<double> spec = merged_spectrum(pair);
    cplx integral(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < spec.size(); ++i) {
        const double a = spec[i], b = spec[i + 1];
        if (!(b > a)) continue;
        const int xi = ssf_count_oracle(pair, 0.5 * (a + b));
        if (xi == 0) continue;
        integral += static_cast<double>(xi) *
                    integrate_complex([&](double l) { return std::pow(cplx(l) - z, -(m + 1)); }, a, b);
    }
    return std::abs(lhs + static_cast<double>(m) * integral);
}

std::pair<double, double> krein_identity(const MatrixPair& pair, const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime) {
    const RVec e0 = eigenvalues(pair.S0);
    const RVec e1 = eigenvalues(pair.S());
    double lhs = 0.0;
    for (Eigen::Index i = 0; i < e1.size(); ++i) lhs += f(e1(i));
    for (Eigen::Index i = 0; i < e0.size(); ++i) lhs -= f(e0(i));
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const std::vector<double> spec = merged_spectrum(pair);
    double rhs = 0.0;
    for (std::size_t i = 0; i + 1 < spec.size(); ++i) {
        const double a = spec[i], b = spec[i + 1];
        if (!(b > a)) continue;
        const int xi = ssf_count_oracle(pair, 0.5 * (a + b));
        if (xi) rhs += xi * GK::integrate(fprime, a, b, 15, 1e-14);
    }
    return {lhs, rhs};
}

double abel_transform(const std::function<double(double)>& xi, double lambda, const std::vector<double>& breakpoints,
                      int nodes) {
    if (!(lambda > 0.0)) throw std::domain_error("abel_transform: lambda must be positive");
    const double s = std::sqrt(lambda);
    std::vector<double> cuts{-kPi / 2.0, kPi / 2.0};
    for (double b : breakpoints)
        if (std::abs(b) < s) cuts.push_back(std::asin(b / s));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto [th, w] = numerics::gauss_legendre(nodes, cuts[i], cuts[i + 1]);
        for (std::size_t q = 0; q < th.size(); ++q) total += w[q] * xi(s * std::sin(th[q]));
    }
    return total / kPi;
}

AbelLimit abel_zero_limit(const std::function<double(double)>& xi, const std::vector<double>& breakpoints, double tol) {
    AbelLimit r;
    for (int j = 1; j <= 8; ++j) {
        const double l = std::pow(10.0, -2.0 * j);
        r.lambdas.push_back(l);
        r.values.push_back(abel_transform(xi, l, breakpoints));
    }
    const std::size_t n = r.values.size();
    r.value = r.values.back();
    r.converged = std::abs(r.values[n - 1] - r.values[n - 2]) <= tol &&
                  std::abs(r.values[n - 2] - r.values[n - 3]) <= 10.0 * tol + 1e-6;
    return r;
}

WittenResult witten_index(const Mat& T, int k, const std::vector<double>& schedule) {
    if (k < 1) throw std::invalid_argument("witten_index: k must be >= 1");
    if (schedule.size() < 2) throw std::invalid_argument("witten_index: need at least two lambda values");
    for (double l : schedule)
        if (!(l < 0.0)) throw std::invalid_argument("witten_index: lambda schedule must be negative");
    WittenResult r;
    r.k = k;
    r.lambda_schedule = schedule;
    const Mat TT = T * T.adjoint();
    const Mat TsT = T.adjoint() * T;
    auto trace_inv_pow = [k](const Mat& H, double l) {
        Mat M = H;
        M.diagonal().array() -= l;
        const Mat inv = M.partialPivLu().inverse();
        Mat P = inv;
        for (int i = 1; i < k; ++i) P = P * inv;
        return P.trace().real();
    };
    for (double l : schedule)
        r.scaled_traces.push_back(std::pow(-l, k) * (trace_inv_pow(TsT, l) - trace_inv_pow(TT, l)));
    const std::size_t n = schedule.size();
    double mean = 0.0;
    for (double v : r.scaled_traces) mean += v;
    mean /= static_cast<double>(n);
    for (double v : r.scaled_traces) r.variance += (v - mean) * (v - mean);
    r.variance /= static_cast<double>(n);
    // Linear extrapolation through the two points closest to 0.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return schedule[a] > schedule[b]; });
    const double l1 = schedule[idx[0]], l2 = schedule[idx[1]];
    const double v1 = r.scaled_traces[idx[0]], v2 = r.scaled_traces[idx[1]];
    r.extrapolated = v1 + (v1 - v2) * (0.0 - l1) / (l1 - l2);
    r.exact = static_cast<int>(T.cols() - T.rows());
    return r;
}

}  // namespace dirac::ssf
