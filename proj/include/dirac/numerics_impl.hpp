#pragma once

#include <random>

#include <Eigen/QR>

namespace dirac::numerics {

template <class Rng>
Mat ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0));
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

template <class Rng>
Mat random_unitary(int d, Rng& rng) {
    const Mat g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const cplx rjj = r(j, j);
        q.col(j) *= std::abs(rjj) > 0 ? rjj / std::abs(rjj) : cplx(1.0);
    }
    return q;
}

}  // namespace dirac::numerics
