#include "dirac/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/float128.hpp>

namespace dirac::specfun {

namespace {

namespace mp = boost::multiprecision;

struct TierDouble {
    using R = double;
    using C = std::complex<double>;
    static constexpr double tol = 1e-16;
};
struct TierQuad {
    using R = mp::float128;
    using C = mp::complex128;
    static constexpr double tol = 1e-17;
};
struct TierExtended {
    using R = mp::cpp_bin_float_50;
    using C = mp::cpp_complex_50;
    static constexpr double tol = 1e-17;
};

template <class Tier>
struct Series {
    using R = typename Tier::R;
    using C = typename Tier::C;

    static R pi() { return boost::math::constants::pi<R>(); }
    static R euler() { return boost::math::constants::euler<R>(); }

    static C lift(cplx z) { return C(R(z.real()), R(z.imag())); }
    static cplx drop(const C& z) {
        return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    static R mag(const C& z) {
        using std::abs;
        return abs(z);
    }

    static C ipow(const C& h, int e) {
        C out(R(1), R(0));
        C b = e >= 0 ? h : C(R(1), R(0)) / h;
        for (int k = 0; k < std::abs(e); ++k) out *= b;
        return out;
    }

    // (h)^{nu2/2}, principal branch
    static C half_power(const C& h, int nu2) {
        if (nu2 % 2 == 0) return ipow(h, nu2 / 2);
        using std::exp;
        using std::log;
        return exp(C(R(nu2) / 2, R(0)) * log(h));
    }

    // 1 / Gamma(nu2/2 + 1)
    static R inv_gamma_shift(int nu2) {
        if (nu2 % 2 == 0) {
            const int m = nu2 / 2;
            if (m < 0) return R(0);
            R f(1);
            for (int k = 2; k <= m; ++k) f *= k;
            return R(1) / f;
        }
        // Gamma(h) for half-integer h = (nu2 + 2)/2, stepping from Gamma(1/2) = sqrt(pi)
        using std::sqrt;
        R g = sqrt(pi());
        int twice_h = 1;
        const int target = nu2 + 2;
        while (twice_h < target) {
            g *= R(twice_h) / 2;
            twice_h += 2;
        }
        while (twice_h > target) {
            twice_h -= 2;
            g /= R(twice_h) / 2;
        }
        return R(1) / g;
    }

    static C j(int nu2, const C& zeta, double tol = Tier::tol) {
        if (nu2 < 0 && nu2 % 2 == 0) {
            const int n = -nu2 / 2;
            const C v = j(-nu2, zeta, tol);
            return (n % 2 == 0) ? v : C(-v);
        }
        const C h = zeta / R(2);
        const C h2 = h * h;
        C term(inv_gamma_shift(nu2), R(0));
        C sum = term;
        for (int k = 1; k < kSeriesCap; ++k) {
            term *= -h2 / (R(k) * (R(2 * k + nu2) / 2));
            sum += term;
            if (mag(term) < tol * mag(sum)) break;
        }
        return sum * half_power(h, nu2);
    }

    static R psi(int k) {
        R s = -euler();
        for (int m = 1; m < k; ++m) s += R(1) / R(m);
        return s;
    }

    static C y(int n, const C& zeta, double tol = Tier::tol) {
        using std::log;
        const C h = zeta / R(2);
        const C h2 = h * h;
        const C L = log(h);
        if (n == 0) {
            C term(R(1), R(0));
            C sum(R(0), R(0));
            R harmonic(0);
            for (int k = 1; k < kSeriesCap; ++k) {
                term *= -h2 / R(R(k) * R(k));
                harmonic += R(1) / R(k);
                const C add = term * harmonic;
                sum += add;
                if (mag(add) < tol * mag(sum)) break;
            }
            return R(2) / pi() * (L + euler()) * j(0, zeta, tol) - R(2) / pi() * sum;
        }
        C fin(R(0), R(0));
        {
            R fact_nk1(1);  // (n-k-1)!
            for (int m = 2; m <= n - 1; ++m) fact_nk1 *= m;
            R fact_k(1);
            C hp(R(1), R(0));
            for (int k = 0; k < n; ++k) {
                if (k > 0) {
                    fact_k *= k;
                    fact_nk1 /= (n - k);
                    hp *= h2;
                }
                fin += hp * (fact_nk1 / fact_k);
            }
        }
        C series(R(0), R(0));
        {
            R inv_nfact = inv_gamma_shift(2 * n);
            C term(inv_nfact, R(0));  // (-1)^k h^{2k} / (k! (n+k)!)
            R psik = psi(1), psink = psi(n + 1);
            series = term * (psik + psink);
            for (int k = 1; k < kSeriesCap; ++k) {
                term *= -h2 / (R(k) * R(n + k));
                psik += R(1) / R(k);
                psink += R(1) / R(n + k);
                const C add = term * (psik + psink);
                series += add;
                if (mag(add) < tol * mag(series)) break;
            }
        }
        return -fin * ipow(h, -n) / pi() + R(2) / pi() * j(2 * n, zeta, tol) * L - ipow(h, n) * series / pi();
    }

    static C y0_digamma_form(const C& zeta) {
        using std::log;
        const C h = zeta / R(2);
        const C h2 = h * h;
        C term(R(1), R(0));
        R ps = psi(1);
        C series = term * (ps + ps);
        for (int k = 1; k < kSeriesCap; ++k) {
            term *= -h2 / R(R(k) * R(k));
            ps += R(1) / R(k);
            const C add = term * (ps + ps);
            series += add;
            if (mag(add) < Tier::tol * mag(series)) break;
        }
        return R(2) / pi() * j(0, zeta) * log(h) - series / pi();
    }

    // J and Y grow like e^{Im zeta} while H decays like e^{-Im zeta}: truncate deep enough
    // that the cancellation in J + iY still leaves Tier::tol relative accuracy.
    static C hankel(int nu2, const C& zeta) {
        const C i(R(0), R(1));
        const double im = std::max(static_cast<double>(zeta.imag()), 0.0);
        const double tol = std::max(Tier::tol * std::exp(-2.0 * im), 1e-300);
        if (nu2 % 2 == 0) return j(nu2, zeta, tol) + i * y(nu2 / 2, zeta, tol);
        const int jj = (nu2 - 1) / 2;
        const C jm = j(-nu2, zeta, tol);
        return j(nu2, zeta, tol) - i * ((jj % 2 == 0) ? jm : C(-jm));
    }
};

cplx normalized(cplx zeta, const char* who) {
    if (zeta == cplx(0.0, 0.0)) throw std::domain_error(std::string(who) + ": zeta = 0");
    if (zeta.imag() < 0.0) throw std::domain_error(std::string(who) + ": Im zeta < 0");
    if (zeta.imag() == 0.0) zeta = cplx(zeta.real(), 0.0);  // drop a negative zero
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()))
        throw std::domain_error(std::string(who) + ": non-finite argument");
    return zeta;
}

template <class F>
cplx dispatch(cplx zeta, F&& f) {
    switch (series_precision(zeta)) {
    case Precision::Double: return f(Series<TierDouble>{}, zeta);
    case Precision::Quad: return f(Series<TierQuad>{}, zeta);
    default: return f(Series<TierExtended>{}, zeta);
    }
}

}  // namespace

int twice_order(double nu) {
    const double t = 2.0 * nu;
    if (t != std::round(t) || std::abs(t) > 400.0)
        throw std::invalid_argument("specfun: order must be an integer or half-integer");
    return static_cast<int>(std::lround(t));
}

double digamma_int(int k) {
    if (k <= 0) throw std::domain_error("digamma_int: k must be >= 1");
    double s = -kEulerGamma;
    for (int m = 1; m < k; ++m) s += 1.0 / m;
    return s;
}

Precision series_precision(cplx zeta) {
    const double e = std::abs(zeta) + std::max(zeta.imag(), 0.0);
    if (e <= 7.0) return Precision::Double;
    if (e <= 48.0) return Precision::Quad;
    return Precision::Extended;
}

cplx bessel_j(double nu, cplx zeta) {
    const int nu2 = twice_order(nu);
    zeta = normalized(zeta, "bessel_j");
    return dispatch(zeta, [nu2](auto s, cplx z) { return s.drop(s.j(nu2, s.lift(z))); });
}

cplx bessel_y(int n, cplx zeta) {
    if (n < 0) {
        const cplx v = bessel_y(-n, zeta);
        return (n % 2 == 0) ? v : -v;
    }
    zeta = normalized(zeta, "bessel_y");
    return dispatch(zeta, [n](auto s, cplx z) { return s.drop(s.y(n, s.lift(z))); });
}

cplx bessel_y0_digamma_form(cplx zeta) {
    zeta = normalized(zeta, "bessel_y0");
    return dispatch(zeta, [](auto s, cplx z) { return s.drop(s.y0_digamma_form(s.lift(z))); });
}

cplx hankel1_series(double nu, cplx zeta) {
    const int nu2 = twice_order(nu);
    zeta = normalized(zeta, "hankel1_series");
    if (nu2 < 0) return std::exp(cplx(0.0, -nu * M_PI)) * hankel1_series(-nu, zeta);
    return dispatch(zeta, [nu2](auto s, cplx z) { return s.drop(s.hankel(nu2, s.lift(z))); });
}

cplx hankel1_halfint(double nu, cplx zeta) {
    const int nu2 = twice_order(nu);
    if (nu2 % 2 == 0 || nu2 < 0) throw std::invalid_argument("hankel1_halfint: order must be j + 1/2, j >= 0");
    zeta = normalized(zeta, "hankel1_halfint");
    const int j = (nu2 - 1) / 2;
    // i^{-(j+1)}
    static const cplx ipow[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
    const cplx pre = std::sqrt(2.0 / M_PI) * ipow[(j + 1) % 4] * std::exp(I_unit * zeta) / std::sqrt(zeta);
    const cplx w = 1.0 / (-2.0 * I_unit * zeta);
    cplx sum = 0.0, wk = 1.0;
    double c = 1.0;  // (j+k)!/(k!(j-k)!)
    for (int k = 0; k <= j; ++k) {
        if (k > 0) {
            c *= static_cast<double>((j + k) * (j - k + 1)) / k;
            wk *= w;
        }
        sum += c * wk;
    }
    return pre * sum;
}

AsymptoticValue hankel1_asymptotic(double nu, cplx zeta, int p) {
    if (p < 1) throw std::invalid_argument("hankel1_asymptotic: p must be >= 1");
    zeta = normalized(zeta, "hankel1_asymptotic");
    if (std::abs(zeta) < kAsymptoticRadius)
        throw std::domain_error("hankel1_asymptotic: |zeta| below the switchover radius");
    twice_order(nu);
    const cplx pre = std::sqrt(2.0 / (M_PI * zeta)) * std::exp(I_unit * (zeta - nu * M_PI / 2.0 - M_PI / 4.0));
    cplx term = 1.0, sum = 0.0;
    for (int m = 0; m < p; ++m) {
        if (m > 0) term *= (0.5 - nu + m - 1) * (nu + 0.5 + m - 1) / (m * 2.0 * I_unit * zeta);
        sum += term;
    }
    return {pre * sum, std::abs(term), p};
}

AsymptoticValue hankel1_asymptotic_auto(double nu, cplx zeta) {
    zeta = normalized(zeta, "hankel1_asymptotic");
    twice_order(nu);
    const cplx pre = std::sqrt(2.0 / (M_PI * zeta)) * std::exp(I_unit * (zeta - nu * M_PI / 2.0 - M_PI / 4.0));
    cplx term = 1.0, sum = 1.0;
    int m = 1;
    for (; m < 400; ++m) {
        const cplx next = term * ((0.5 - nu + m - 1) * (nu + 0.5 + m - 1) / (m * 2.0 * I_unit * zeta));
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            ++m;
            break;
        }
    }
    return {pre * sum, std::abs(term), m};
}

cplx hankel1(double nu, cplx zeta) {
    const int nu2 = twice_order(nu);
    zeta = normalized(zeta, "hankel1");
    if (nu2 < 0) return std::exp(cplx(0.0, -nu * M_PI)) * hankel1(-nu, zeta);
    if (nu2 % 2 != 0) return hankel1_halfint(nu, zeta);
    if (std::abs(zeta) >= kAsymptoticRadius) return hankel1_asymptotic_auto(nu, zeta).value;
    return hankel1_series(nu, zeta);
}

}  // namespace dirac::specfun
