#include "dirac/green.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dirac/specfun.hpp"

namespace dirac::green {

namespace {

constexpr double kSeriesTol = 1e-16;
constexpr int kSeriesCap = 200;

void require_distinct(const RVec& x, const RVec& y, int n) {
    if (x.size() != n || y.size() != n) throw std::invalid_argument("green: point dimension mismatch");
    if ((x - y).norm() == 0.0) throw std::invalid_argument("green: x = y is the kernel singularity");
}

void require_upper(cplx z) {
    if (z.imag() < 0.0) throw std::domain_error("green: Im z < 0");
    if (z == cplx(0.0, 0.0)) throw std::domain_error("green: z = 0, use green0_limit0");
}

// zeta^a for integer or half-integer a, principal branch
cplx zpow(cplx zeta, double a) {
    if (a == std::round(a)) return std::pow(zeta, static_cast<int>(std::lround(a)));
    return std::exp(a * std::log(zeta));
}

cplx prefactor_a(int n) { return I_unit * 0.25 * std::pow(2.0 * M_PI, (2.0 - n) / 2.0); }
cplx prefactor_b(int n) { return -0.25 * std::pow(2.0 * M_PI, (2.0 - n) / 2.0); }

// c zeta^p [ln(zeta/2)]^e
struct LogPowerTerm {
    cplx c;
    int p;
    int e;
};

std::vector<LogPowerTerm> differentiate(const std::vector<LogPowerTerm>& in) {
    std::vector<LogPowerTerm> out;
    for (const auto& t : in) {
        if (t.p != 0) out.push_back({t.c * static_cast<double>(t.p), t.p - 1, t.e});
        if (t.e == 1) out.push_back({t.c, t.p - 1, 0});
    }
    return out;
}

cplx evaluate(const std::vector<LogPowerTerm>& terms, cplx zeta) {
    const cplx L = std::log(zeta / 2.0);
    cplx s = 0.0;
    for (const auto& t : terms) {
        cplx v = t.c * std::pow(zeta, t.p);
        if (t.e == 1) v *= L;
        s += v;
    }
    return s;
}

// k-th group of the series of zeta^{n/2} J_nu(zeta): a single power
LogPowerTerm j_chunk(double a, double nu, int k) {
    const double c = ((k % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -(2.0 * k + nu)) /
                     (std::tgamma(k + 1.0) * std::tgamma(k + nu + 1.0));
    return {cplx(c, 0.0), static_cast<int>(std::lround(a + nu + 2.0 * k)), 0};
}

// k-th group of the series of zeta^{n/2} H_mu(zeta), mu >= 0 integer or half-integer.
std::vector<LogPowerTerm> hankel_chunk(int n, double mu, int k) {
    const double a = n / 2.0;
    std::vector<LogPowerTerm> out;
    if (mu != std::round(mu)) {
        const int j = static_cast<int>(std::lround(mu - 0.5));
        out.push_back(j_chunk(a, mu, k));
        LogPowerTerm neg = j_chunk(a, -mu, k);
        neg.c *= -I_unit * ((j % 2 == 0) ? 1.0 : -1.0);
        out.push_back(neg);
        return out;
    }
    const int m = static_cast<int>(std::lround(mu));
    const LogPowerTerm jt = j_chunk(a, mu, k);
    const double psi_sum = specfun::digamma_int(k + 1) + specfun::digamma_int(m + k + 1);
    // J part and the digamma part of iY share the power
    out.push_back({jt.c - I_unit * (psi_sum / M_PI) * jt.c, jt.p, 0});
    out.push_back({I_unit * (2.0 / M_PI) * jt.c, jt.p, 1});
    if (k < m) {
        const double c = std::tgamma(m - k) / std::tgamma(k + 1.0) * std::pow(2.0, m - 2.0 * k);
        out.push_back({-I_unit * c / M_PI, static_cast<int>(std::lround(a - mu + 2.0 * k)), 0});
    }
    return out;
}

// d^r/dzeta^r [zeta^{n/2} H_mu(zeta)] by term-wise differentiation
cplx termwise_derivative(int n, double mu, int r, cplx zeta) {
    cplx sum = 0.0;
    const int kmin = static_cast<int>(std::ceil(std::max(mu, static_cast<double>(r)))) + 1;
    for (int k = 0; k < kSeriesCap; ++k) {
        auto terms = hankel_chunk(n, mu, k);
        for (int i = 0; i < r; ++i) terms = differentiate(terms);
        const cplx add = evaluate(terms, zeta);
        sum += add;
        if (k > kmin && std::abs(add) < kSeriesTol * std::abs(sum)) break;
    }
    return sum;
}

// d^r/dzeta^r [zeta^{n/2} H_mu(zeta)] via the Hankel recurrence
cplx closed_derivative(int n, double mu, int r, cplx zeta) {
    std::map<std::pair<double, double>, double> terms;  // (a, mu) -> coefficient
    terms[{n / 2.0, mu}] = 1.0;
    for (int i = 0; i < r; ++i) {
        std::map<std::pair<double, double>, double> next;
        for (const auto& [key, c] : terms) {
            const auto [a, m] = key;
            if (a - m != 0.0) next[{a - 1.0, m}] += c * (a - m);
            next[{a, m - 1.0}] += c;
        }
        terms = std::move(next);
    }
    cplx s = 0.0;
    for (const auto& [key, c] : terms) {
        if (c == 0.0) continue;
        s += c * zpow(zeta, key.first) * specfun::hankel1(key.second, zeta);
    }
    return s;
}

double falling(int top, int r) {
    double f = 1.0;
    for (int i = 0; i < r; ++i) f *= (top - i);
    return f;
}

// explicit odd-n derivative series; returns (a, b)
KernelCoeffs odd_series(int n, int r, cplx z, double rho) {
    const double pw = std::pow(M_PI, 1.0 - n / 2.0);
    const double sgn = ((n + 1) / 2 % 2 == 0) ? 1.0 : -1.0;  // (-1)^{(n+1)/2}
    auto run = [&](int k0, auto&& term) {
        cplx s = 0.0;
        for (int k = k0; k < k0 + kSeriesCap; ++k) {
            const cplx add = term(k);
            s += add;
            if (k > k0 + 1 && std::abs(add) <= kSeriesTol * std::abs(s)) break;
        }
        return s;
    };
    const double rho2 = rho * rho;
    auto base = [&](int k) { return std::pow(-0.25, k) * std::pow(rho2, k) / std::tgamma(k + 1.0); };

    const cplx s1 = run(delta_n(n, r), [&](int k) {
        const int top = 2 * k + n - 1;
        return base(k) * falling(top, r) * std::pow(z, top - r) / std::tgamma(n / 2.0 + k);
    });
    const cplx s2 = run(k_minus(r), [&](int k) {
        const int top = 2 * k + 1;
        return base(k) * falling(top, r) * std::pow(z, top - r) / std::tgamma(-n / 2.0 + k + 2.0);
    });
    const cplx s3 = run(0, [&](int k) {
        const int top = 2 * k + n;
        return base(k) * falling(top, r) * std::pow(z, top - r) / std::tgamma(n / 2.0 + k + 1.0);
    });
    const cplx s4 = run(k_plus(r), [&](int k) {
        const int top = 2 * k;
        return base(k) * falling(top, r) * std::pow(z, top - r) / std::tgamma(-n / 2.0 + k + 1.0);
    });
    KernelCoeffs c;
    c.a = I_unit * std::pow(2.0, -n) * pw * s1 + 0.25 * sgn * pw * std::pow(rho, 2 - n) * s2;
    c.b = -std::pow(2.0, -1 - n) * pw * rho * s3 - I_unit * 0.5 * sgn * pw * std::pow(rho, 1 - n) * s4;
    return c;
}

}  // namespace

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::Series: return "series";
    case Regime::Asymptotic: return "asymptotic";
    case Regime::ClosedForm: return "closed_form";
    case Regime::ZeroLimit: return "zero_limit";
    }
    return "unknown";
}

Mat assemble(const CliffordRep& rep, const KernelCoeffs& c, const RVec& omega) {
    Mat m = c.b * clifford::dirac_symbol(rep, omega);
    m.diagonal().array() += c.a;
    return m;
}

KernelCoeffs green0_coeffs(int n, cplx z, double rho) {
    const cplx zeta = z * rho;
    const cplx zn = zpow(zeta, n / 2.0);
    const double scale = std::pow(rho, 1 - n);
    return {prefactor_a(n) * scale * zn * specfun::hankel1(n / 2.0 - 1.0, zeta),
            prefactor_b(n) * scale * zn * specfun::hankel1(n / 2.0, zeta)};
}

KernelCoeffs green0_coeffs_n3(cplx z, double rho) {
    const cplx e = std::exp(I_unit * z * rho) / (4.0 * M_PI * rho);
    return {e * z, e * (z + I_unit / rho)};
}

namespace {
KernelMatrix make_kernel(const CliffordRep& rep, cplx z, const RVec& x, const RVec& y, const KernelCoeffs& c,
                         Regime reg) {
    KernelMatrix k;
    const double rho = (x - y).norm();
    k.value = assemble(rep, c, (x - y) / rho);
    k.n = rep.n;
    k.N = rep.N;
    k.z = z;
    k.x = x;
    k.y = y;
    k.regime = reg;
    return k;
}

Regime hankel_regime(int n, cplx zeta) {
    if (n % 2 == 1) return Regime::ClosedForm;
    return std::abs(zeta) >= specfun::kAsymptoticRadius ? Regime::Asymptotic : Regime::Series;
}
}  // namespace

KernelMatrix green0(const CliffordRep& rep, cplx z, const RVec& x, const RVec& y) {
    if (rep.n != 3) return green0_generic(rep, z, x, y);
    require_distinct(x, y, rep.n);
    require_upper(z);
    const double rho = (x - y).norm();
    return make_kernel(rep, z, x, y, green0_coeffs_n3(z, rho), Regime::ClosedForm);
}

KernelMatrix green0_generic(const CliffordRep& rep, cplx z, const RVec& x, const RVec& y) {
    require_distinct(x, y, rep.n);
    require_upper(z);
    const double rho = (x - y).norm();
    return make_kernel(rep, z, x, y, green0_coeffs(rep.n, z, rho), hankel_regime(rep.n, z * rho));
}

double limit0_coefficient(int n) { return 0.5 * std::pow(M_PI, -n / 2.0) * std::tgamma(n / 2.0); }

KernelCoeffs green0_limit0_coeffs(int n, double rho) {
    return {0.0, I_unit * limit0_coefficient(n) * std::pow(rho, 1 - n)};
}

KernelMatrix green0_limit0(const CliffordRep& rep, const RVec& x, const RVec& y) {
    require_distinct(x, y, rep.n);
    KernelMatrix k = make_kernel(rep, 0.0, x, y, green0_limit0_coeffs(rep.n, (x - y).norm()), Regime::ZeroLimit);
    k.zero_limit = true;
    return k;
}

int k_minus(int r) { return (r % 2 == 1) ? (r - 1) / 2 : r / 2; }
int k_plus(int r) { return (r % 2 == 1) ? (r + 1) / 2 : r / 2; }
int delta_n(int n, int r) { return n == r ? 1 : 0; }

KernelCoeffs deriv_coeffs_termwise(int n, int r, cplx z, double rho) {
    const cplx zeta = z * rho;
    const double scale = std::pow(rho, 1 - n + r);
    return {prefactor_a(n) * scale * termwise_derivative(n, n / 2.0 - 1.0, r, zeta),
            prefactor_b(n) * scale * termwise_derivative(n, n / 2.0, r, zeta)};
}

KernelCoeffs deriv_coeffs_series(int n, int r, cplx z, double rho) {
    if (n % 2 == 1) return odd_series(n, r, z, rho);
    return deriv_coeffs_termwise(n, r, z, rho);
}

KernelCoeffs deriv_coeffs_closed(int n, int r, cplx z, double rho) {
    const cplx zeta = z * rho;
    const double scale = std::pow(rho, 1 - n + r);
    return {prefactor_a(n) * scale * closed_derivative(n, n / 2.0 - 1.0, r, zeta),
            prefactor_b(n) * scale * closed_derivative(n, n / 2.0, r, zeta)};
}

KernelCoeffs deriv_coeffs(int n, int r, cplx z, double rho, Regime* used) {
    if (r < 0 || r > n) throw std::invalid_argument("green0_deriv: order must satisfy 0 <= r <= n");
    if (std::abs(z) * rho <= 1.0) {
        if (used) *used = Regime::Series;
        return deriv_coeffs_series(n, r, z, rho);
    }
    if (used) *used = Regime::Asymptotic;
    return deriv_coeffs_closed(n, r, z, rho);
}

DerivativeKernel green0_deriv(const CliffordRep& rep, int r, cplx z, const RVec& x, const RVec& y) {
    if (r < 1 || r > rep.n) throw std::invalid_argument("green0_deriv: order must satisfy 1 <= r <= n");
    require_distinct(x, y, rep.n);
    require_upper(z);
    const double rho = (x - y).norm();
    DerivativeKernel d;
    d.r = r;
    const KernelCoeffs c = deriv_coeffs(rep.n, r, z, rho, &d.regime);
    d.value = assemble(rep, c, (x - y) / rho);
    return d;
}

Rational odd_coefficient(int m, int j) {
    using boost::multiprecision::cpp_int;
    auto fact = [](int k) {
        cpp_int f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    Rational s = 0;
    for (int k = std::max(0, m - j); k <= m; ++k) {
        Rational t(fact(m + k), fact(k) * fact(m - k) * fact(j + k - m));
        cpp_int p2 = cpp_int(1) << k;
        t /= Rational(p2);
        if (k % 2 == 1) t = -t;
        s += t;
    }
    return s;
}

OddDimCoeffs odd_dim_coeffs(int n) {
    if (n % 2 == 0) throw std::invalid_argument("odd_dim_coeffs: n must be odd");
    if (n < 3 || n > 13) throw std::invalid_argument("odd_dim_coeffs: n must lie in 3..13");
    OddDimCoeffs out;
    out.n = n;
    for (int j = 0; j <= 2 * n; ++j) {
        out.d.push_back(odd_coefficient((n - 3) / 2, j));
        out.dprime.push_back(odd_coefficient((n - 1) / 2, j));
    }
    return out;
}

double envelope(int n, int r, cplx z, double rho, double delta) {
    const double az = std::abs(z);
    if (az * rho >= 1.0)
        return std::pow(az, (n - 1) / 2.0) * std::pow(rho, (2.0 * r + 1.0 - n) / 2.0) * std::exp(-z.imag() * rho);
    if (n % 2 == 1) return std::pow(rho, r + 1 - n);
    if (az == 0.0) return std::numeric_limits<double>::infinity();
    if (r != n) return std::pow(az, -delta) * std::pow(rho, r + 1.0 - delta - n);
    return std::pow(az, -delta) * std::pow(rho, 1.0 - delta) + 1.0 / az;
}

BoundReport kernel_bound_report(const CliffordRep& rep, cplx z, int r,
                                const std::vector<std::pair<RVec, RVec>>& samples, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("kernel_bound_report: delta must lie in (0,1)");
    BoundReport rpt;
    rpt.n = rep.n;
    rpt.r = r;
    rpt.z = z;
    rpt.delta = delta;
    rpt.small.min_ratio = rpt.large.min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : samples) {
        const double rho = (x - y).norm();
        if (rho == 0.0) continue;
        const KernelCoeffs c = r == 0 ? green0_coeffs(rep.n, z, rho) : deriv_coeffs(rep.n, r, z, rho);
        // a I + b alpha.omega is normal with eigenvalues a +- b
        const double nrm = std::max(std::abs(c.a + c.b), std::abs(c.a - c.b));
        const double ratio = nrm / envelope(rep.n, r, z, rho, delta);
        RegimeBound& b = (std::abs(z) * rho <= 1.0) ? rpt.small : rpt.large;
        ++b.samples;
        if (!std::isfinite(ratio)) {
            ++b.nonfinite;
            continue;
        }
        b.max_ratio = std::max(b.max_ratio, ratio);
        b.min_ratio = std::min(b.min_ratio, ratio);
    }
    for (RegimeBound* b : {&rpt.small, &rpt.large})
        if (b->samples == 0) b->min_ratio = 0.0;
    return rpt;
}

KernelMatrix green0_massive(const CliffordRep& rep, double m, cplx z, const RVec& x, const RVec& y) {
    if (!(m > 0.0)) throw std::invalid_argument("green0_massive: mass must be positive");
    require_distinct(x, y, rep.n);
    if (z.imag() < 0.0) throw std::domain_error("green0_massive: Im z < 0");
    if (z.imag() == 0.0 && std::abs(z.real()) >= m)
        throw std::domain_error("green0_massive: z on the branch cut (-inf,-m] U [m,inf)");
    cplx k = std::sqrt(z * z - m * m);
    if (k.imag() < 0.0) k = -k;
    if (!(k.imag() > 0.0)) throw std::domain_error("green0_massive: branch condition Im k > 0 violated");
    const int n = rep.n;
    const double rho = (x - y).norm();
    const cplx kr = k * rho;
    const cplx first = prefactor_a(n) * std::pow(rho, 2 - n) * zpow(kr, (n - 2) / 2.0) *
                       specfun::hankel1((n - 2) / 2.0, kr);
    const cplx second = prefactor_b(n) * std::pow(rho, 1 - n) * zpow(kr, n / 2.0) * specfun::hankel1(n / 2.0, kr);
    KernelMatrix out;
    const RVec omega = (x - y) / rho;
    out.value = first * (m * rep.beta() + z * Mat::Identity(rep.N, rep.N)) +
                second * clifford::dirac_symbol(rep, omega);
    out.n = n;
    out.N = rep.N;
    out.z = z;
    out.x = x;
    out.y = y;
    out.regime = hankel_regime(n, kr);
    return out;
}

}  // namespace dirac::green
