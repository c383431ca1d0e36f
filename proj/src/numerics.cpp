#include "dirac/numerics.hpp"

#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace dirac::numerics {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(m));
    if (!t) throw std::runtime_error("gauss_legendre: table allocation failed");
    std::vector<double> x(m), w(m);
    for (int i = 0; i < m; ++i) gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &x[i], &w[i], t);
    gsl_integration_glfixed_table_free(t);
    return {x, w};
}

std::vector<double> fd_weights(int d, double x0, const std::vector<double>& nodes) {
    const int n = static_cast<int>(nodes.size());
    if (d < 0 || n <= d) throw std::invalid_argument("fd_weights: need more nodes than the derivative order");
    // c[j][k]: weight of node j for derivative k
    std::vector<std::vector<double>> c(n, std::vector<double>(d + 1, 0.0));
    double c1 = 1.0, c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, d);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][d];
    return w;
}

cplx fd_derivative(const std::function<cplx(cplx)>& f, cplx z, int d, double h, int half) {
    std::vector<double> nodes;
    for (int k = -half; k <= half; ++k) nodes.push_back(k * h);
    const auto w = fd_weights(d, 0.0, nodes);
    cplx s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j)
        if (w[j] != 0.0) s += w[j] * f(z + nodes[j]);
    return s;
}

}  // namespace dirac::numerics
