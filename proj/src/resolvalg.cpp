#include "dirac/resolvalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "dirac/green.hpp"

namespace dirac::resolvalg {

namespace {

double max_abs(const Mat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

double rel_diff(const Mat& X, const Mat& Y) {
    const double d = max_abs(X - Y);
    const double s = std::max(max_abs(Y), 1e-300);
    return d == 0.0 ? 0.0 : d / std::max(s, 1.0);
}

Mat inverse_checked(const Mat& M, const char* what) {
    if (M.rows() == 0) return M;
    Eigen::JacobiSVD<Mat> svd(M);
    const RVec s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-13 * std::max(1.0, s(0))) throw std::domain_error(std::string(what) + " is singular");
    return M.partialPivLu().inverse();
}

bool well_conditioned(const Mat& M, double tol) {
    if (M.rows() == 0) return true;
    const RVec s = Eigen::JacobiSVD<Mat>(M).singularValues();
    return s(s.size() - 1) > tol * std::max(1.0, s(0));
}

}  // namespace

RieszProjection riesz_projection(const Mat& A, cplx lambda0, double radius) {
    if (A.rows() != A.cols()) throw std::invalid_argument("riesz_projection: matrix must be square");
    if (!(radius > 0.0)) throw std::invalid_argument("riesz_projection: radius must be positive");
    const Eigen::Index d = A.rows();
    Eigen::ComplexEigenSolver<Mat> es(A, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("riesz_projection: eigenvalue solver failed");
    RieszProjection r;
    r.lambda0 = lambda0;
    r.radius = radius;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double dist = std::abs(es.eigenvalues()(i) - lambda0);
        if (std::abs(dist - radius) <= 1e-8 * std::max(1.0, radius))
            throw std::domain_error("riesz_projection: an eigenvalue lies on the contour");
        r.eigen_count += dist < radius;
    }
    const Mat I = Mat::Identity(d, d);
    for (int M = 64; M <= 1 << 16; M *= 2) {
        Mat P = Mat::Zero(d, d);
        for (int k = 0; k < M; ++k) {
            const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / M);
            const cplx z = lambda0 + radius * e;
            P += (radius * e) * (z * I - A).partialPivLu().inverse();
        }
        P /= static_cast<double>(M);
        r.P = P;
        r.points = M;
        r.idempotency = max_abs(P * P - P);
        if (r.idempotency <= 1e-11) break;
    }
    if (r.idempotency > 1e-11) throw std::runtime_error("riesz_projection: contour quadrature did not converge");
    r.commutator = max_abs(A * r.P - r.P * A);
    r.rank = static_cast<int>(std::lround(r.P.trace().real()));
    return r;
}

Mat eigen_group_projection(const Mat& A, cplx lambda0, double radius) {
    Eigen::ComplexEigenSolver<Mat> es(A);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen_group_projection: eigenvalue solver failed");
    const Mat X = es.eigenvectors();
    const Mat Xinv = inverse_checked(X, "eigenvector matrix (defective cluster)");
    const Eigen::Index d = A.rows();
    Mat D = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        if (std::abs(es.eigenvalues()(i) - lambda0) < radius) D(i, i) = 1.0;
    return X * D * Xinv;
}

JNResult jn_invert(const Mat& A, const Mat& P, double tol) {
    if (A.rows() != A.cols() || P.rows() != A.rows() || P.cols() != A.cols())
        throw std::invalid_argument("jn_invert: A and P must be square of equal size");
    const Eigen::Index d = A.rows();
    const Mat Minv = inverse_checked(A + P, "A + P");
    JNResult r;
    r.a = P - P * Minv * P;
    Eigen::JacobiSVD<Mat> svd(P, Eigen::ComputeFullU);
    const RVec s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > 1e-10 * std::max(1.0, s(0));
    r.basis = svd.matrixU().leftCols(rank);
    r.a_reduced = r.basis.adjoint() * r.a * r.basis;
    r.invertible = well_conditioned(r.a_reduced, tol);
    if (r.invertible) {
        const Mat ainv = rank ? Mat(r.basis * r.a_reduced.partialPivLu().inverse() * r.basis.adjoint())
                              : Mat(Mat::Zero(d, d));
        r.Ainv = Minv + Minv * P * ainv * P * Minv;
        r.residual = max_abs(A * r.Ainv - Mat::Identity(d, d));
    }
    return r;
}

FeshbachResult feshbach_invert(const Mat& b11, const Mat& b12, const Mat& b21, const Mat& b22, double tol) {
    const Eigen::Index n1 = b11.rows(), n2 = b22.rows();
    if (b11.cols() != n1 || b22.cols() != n2 || b12.rows() != n1 || b12.cols() != n2 || b21.rows() != n2 ||
        b21.cols() != n1)
        throw std::invalid_argument("feshbach_invert: inconsistent block shapes");
    const Mat b22inv = inverse_checked(b22, "b22");
    FeshbachResult r;
    r.b = b11 - b12 * b22inv * b21;
    r.invertible = well_conditioned(r.b, tol);
    if (!r.invertible) return r;
    const Mat binv = r.b.partialPivLu().inverse();
    r.inverse.resize(n1 + n2, n1 + n2);
    r.inverse.topLeftCorner(n1, n1) = binv;
    r.inverse.topRightCorner(n1, n2) = -binv * b12 * b22inv;
    r.inverse.bottomLeftCorner(n2, n1) = -b22inv * b21 * binv;
    r.inverse.bottomRightCorner(n2, n2) = b22inv + b22inv * b21 * binv * b12 * b22inv;
    Mat full(n1 + n2, n1 + n2);
    full << b11, b12, b21, b22;
    r.residual = rel_diff(r.inverse, full.partialPivLu().inverse());
    return r;
}

double BSResiduals::max() const {
    return std::max({resolvent, difference_left, difference_right, inverse_roles, v1_sandwich, v1_product,
                     v2_identity});
}

BSResiduals bs_residuals(const Mat& S0, const Mat& V1, const Mat& V2, cplx z) {
    if (z.imag() == 0.0) throw std::domain_error("bs_residuals: z must be off the real axis");
    const Eigen::Index d = S0.rows();
    if (S0.cols() != d || V1.cols() != d || V2.cols() != d || V1.rows() != V2.rows())
        throw std::invalid_argument("bs_residuals: inconsistent shapes");
    const Eigen::Index k = V1.rows();
    const Mat Id = Mat::Identity(d, d), Ik = Mat::Identity(k, k);
    auto resolvent = [&](const Mat& H, cplx w) { return Mat((H - w * Id).partialPivLu().inverse()); };
    const Mat S = S0 + V1.adjoint() * V2;
    const Mat R0 = resolvent(S0, z), R0c = resolvent(S0, std::conj(z));
    const Mat R = resolvent(S, z), Rc = resolvent(S, std::conj(z));
    const Mat K0 = V2 * R0 * V1.adjoint();
    BSResiduals r;
    if (!well_conditioned(Ik + K0, 1e-13)) {
        r.singular = true;
        return r;
    }
    const Mat T0inv = (Ik + K0).partialPivLu().inverse();
    r.resolvent = rel_diff(R0 - (V1 * R0c).adjoint() * T0inv * V2 * R0, R);
    r.difference_left = rel_diff(-(V1 * Rc).adjoint() * V2 * R0, R - R0);
    r.difference_right = rel_diff(-(V1 * R0c).adjoint() * V2 * R, R - R0);
    const Mat K = V2 * R * V1.adjoint();
    r.inverse_roles = rel_diff(R + (V1 * Rc).adjoint() * (Ik - K).partialPivLu().inverse() * V2 * R, R0);
    const Mat W = V1 * R * V1.adjoint();
    const Mat W0 = V1 * R0 * V1.adjoint();
    r.v1_sandwich = rel_diff(W0 - W * K0, W);
    r.v1_product = rel_diff(W0 * T0inv, W);
    r.v2_identity = rel_diff(Ik - T0inv, K);
    return r;
}

BSResiduals bs_residuals(const ssf::MatrixPair& pair, cplx z) {
    const potential::PolarFactors f = potential::polar_factorize(pair.V);
    return bs_residuals(pair.S0, f.V1, f.V2(), z);
}

ThresholdReport threshold_classify(const clifford::CliffordRep& rep, const discretize::Grid& grid,
                                   const std::vector<potential::PolarFactors>& factors, double tol) {
    const discretize::DiscretizedOperator op = discretize::assemble_bs_selfadjoint_zero(rep, grid, factors);
    ThresholdReport t;
    t.tol = tol;
    t.hermitian_residual = max_abs(op.matrix - op.matrix.adjoint());
    const Mat H = 0.5 * (op.matrix + op.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("threshold_classify: eigen solver failed");
    const RVec ev = es.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev(a)) < std::abs(ev(b)); });
    t.min_abs_eigenvalue = order.empty() ? 0.0 : std::abs(ev(order[0]));
    for (std::size_t i = 0; i < order.size() && i < 6; ++i) t.near_eigenvalues.push_back(ev(order[i]));
    t.exceptional = !order.empty() && t.min_abs_eigenvalue < tol;
    if (!t.exceptional) return t;

    const int N = rep.N;
    const std::size_t M = grid.size();
    const double half = 0.5 * grid.R;
    for (Eigen::Index idx : order) {
        if (std::abs(ev(idx)) >= tol) break;
        const CVec v = es.eigenvectors().col(idx);
        // u_j = sqrt(w_j) V1(x_j)* phi(x_j) with phi(x_j) = v_j / sqrt(w_j)
        std::vector<CVec> u(M);
        for (std::size_t j = 0; j < M; ++j)
            u[j] = factors[j].V1.adjoint() * v.segment(static_cast<Eigen::Index>(j) * N, N);
        CVec psi = CVec::Zero(static_cast<Eigen::Index>(M) * N);
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < M; ++i) {
            CVec acc = CVec::Zero(N);
            for (std::size_t j = 0; j < M; ++j) {
                if (i == j) continue;
                const RVec dx = grid.nodes[i] - grid.nodes[j];
                const double rho = dx.norm();
                const green::KernelCoeffs c = green::green0_limit0_coeffs(rep.n, rho);
                acc += std::sqrt(grid.weights[j]) * (green::assemble(rep, c, dx / rho) * u[j]);
            }
            psi.segment(static_cast<Eigen::Index>(i) * N, N) = -acc;
        }
        double l2 = 0.0, inner = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            const double q = grid.weights[i] * psi.segment(static_cast<Eigen::Index>(i) * N, N).squaredNorm();
            l2 += q;
            if (grid.nodes[i].cwiseAbs().maxCoeff() <= half) inner += q;
        }
        t.phi.push_back(v);
        t.psi.push_back(psi);
        t.psi_l2.push_back(std::sqrt(l2));
        t.psi_l2_inner.push_back(std::sqrt(inner));
    }
    return t;
}

RefinedThreshold threshold_classify_refined(const clifford::CliffordRep& rep, const potential::MatrixPotential& V,
                                            double R, int m, double tol, std::size_t cap) {
    RefinedThreshold r;
    const discretize::Grid g1 = discretize::build_grid(rep.n, R, m, rep.N, cap);
    r.coarse = threshold_classify(rep, g1, discretize::factorize_on_grid(V, g1), tol);
    try {
        const discretize::Grid g2 = discretize::build_grid(rep.n, R, 2 * m, rep.N, cap);
        r.fine = threshold_classify(rep, g2, discretize::factorize_on_grid(V, g2), tol);
        r.refinement_available = true;
        r.grid_too_coarse = r.coarse.exceptional != r.fine.exceptional;
    } catch (const std::length_error&) {
        r.refinement_available = false;
    }
    return r;
}

std::vector<SweepPoint> amplitude_sweep(const clifford::CliffordRep& rep, const discretize::Grid& grid,
                                        const potential::MatrixPotential& V, const std::vector<double>& amplitudes,
                                        double tol) {
    std::vector<SweepPoint> out(amplitudes.size());
    const auto base = discretize::factorize_on_grid(V, grid);
    for (std::size_t a = 0; a < amplitudes.size(); ++a) {
        const double c = amplitudes[a];
        // Polar factors of c V: V1 scales by sqrt|c|, U_V by sign(c).
        std::vector<potential::PolarFactors> f = base;
        for (auto& p : f) {
            p.V1 *= std::sqrt(std::abs(c));
            if (c < 0) p.UV = -p.UV;
        }
        const ThresholdReport t = threshold_classify(rep, grid, f, tol);
        out[a] = {c, t.min_abs_eigenvalue, t.exceptional};
    }
    return out;
}

GrowthFit bs_inverse_growth(const clifford::CliffordRep& rep, const discretize::Grid& grid,
                            const std::vector<potential::PolarFactors>& factors, const std::vector<double>& etas) {
    GrowthFit g;
    g.etas = etas;
    for (double eta : etas) {
        if (!(eta > 0.0)) throw std::invalid_argument("bs_inverse_growth: eta must be positive");
        const discretize::DiscretizedOperator op = discretize::assemble_bs(rep, grid, cplx(0.0, eta), factors);
        const Eigen::Index d = op.matrix.rows();
        const RVec s = Eigen::BDCSVD<Mat>(Mat::Identity(d, d) + op.matrix).singularValues();
        g.norms.push_back(1.0 / s(s.size() - 1));
    }
    if (etas.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(etas.size());
        for (std::size_t i = 0; i < etas.size(); ++i) {
            const double x = std::log(etas[i]), y = -std::log(g.norms[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        g.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return g;
}

}  // namespace dirac::resolvalg
