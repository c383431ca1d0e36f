#include "dirac/clifford.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace dirac::clifford {

namespace {

Mat pauli(int k) {
    Mat s = Mat::Zero(2, 2);
    switch (k) {
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = cplx(0, -1); s(1, 0) = cplx(0, 1); break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw std::logic_error("pauli index");
    }
    return s;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// 2k+1 anticommuting generators of size 2^k.
std::vector<Mat> maximal_set(int k) {
    std::vector<Mat> g{Mat::Identity(1, 1)};
    for (int level = 1; level <= k; ++level) {
        std::vector<Mat> next;
        const Eigen::Index d = g.front().rows();
        for (const Mat& m : g) next.push_back(kron(pauli(1), m));
        next.push_back(kron(pauli(2), Mat::Identity(d, d)));
        next.push_back(kron(pauli(3), Mat::Identity(d, d)));
        g = std::move(next);
    }
    return g;
}

struct GaussInt {
    long long re = 0, im = 0;
};

bool to_gauss(const Mat& m, std::vector<GaussInt>& out) {
    out.resize(m.size());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const cplx v = m(i, j);
            if (v.real() != std::round(v.real()) || v.imag() != std::round(v.imag())) return false;
            out[i + j * m.rows()] = {static_cast<long long>(v.real()), static_cast<long long>(v.imag())};
        }
    return true;
}

}  // namespace

int rep_size(int n) {
    if (n < 2) throw std::invalid_argument("clifford: n must be >= 2, got " + std::to_string(n));
    return 1 << ((n + 1) / 2);
}

CliffordRep build_clifford(int n) {
    CliffordRep rep;
    rep.n = n;
    rep.N = rep_size(n);
    if (n % 2 == 0) {
        rep.alphas = maximal_set(n / 2);
    } else {
        // drop the second-to-last generator of the next even set so beta stays diagonal
        std::vector<Mat> g = maximal_set((n + 1) / 2);
        g.erase(g.end() - 2);
        rep.alphas = std::move(g);
    }
    return rep;
}

CliffordRep conjugated(const CliffordRep& rep, const Mat& W) {
    CliffordRep out = rep;
    for (Mat& a : out.alphas) a = W * a * W.adjoint();
    return out;
}

RelationReport check_relations(const CliffordRep& rep) {
    RelationReport rpt;
    const int N = rep.N;
    const int cnt = static_cast<int>(rep.alphas.size());
    if (cnt != rep.n + 1) throw std::invalid_argument("clifford: wrong generator count");

    std::vector<std::vector<GaussInt>> g(cnt);
    for (int j = 0; j < cnt; ++j) {
        if (!to_gauss(rep.alphas[j], g[j])) rpt.entries_gaussian_integer = false;
    }
    if (rpt.entries_gaussian_integer) {
        for (int j = 0; j < cnt; ++j) {
            for (const GaussInt& e : g[j])
                if (std::abs(e.re) + std::abs(e.im) > 1 || (e.re != 0 && e.im != 0))
                    rpt.entries_gaussian_integer = false;
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) {
                    const GaussInt a = g[j][r + c * N], b = g[j][c + r * N];
                    if (a.re != b.re || a.im != -b.im) rpt.hermitian = false;
                }
        }
        auto entry = [&](int a, int b, int r, int c) {
            long long re = 0, im = 0;
            for (int t = 0; t < N; ++t) {
                const GaussInt x = g[a][r + t * N], y = g[b][t + c * N];
                re += x.re * y.re - x.im * y.im;
                im += x.re * y.im + x.im * y.re;
            }
            return GaussInt{re, im};
        };
        for (int a = 0; a < cnt; ++a)
            for (int b = a; b < cnt; ++b)
                for (int r = 0; r < N; ++r)
                    for (int c = 0; c < N; ++c) {
                        const GaussInt p = entry(a, b, r, c), q = entry(b, a, r, c);
                        const long long want = (a == b && r == c) ? 2 : 0;
                        if (p.re + q.re != want || p.im + q.im != 0) rpt.anticommute = false;
                    }
        return rpt;
    }

    const Mat id = Mat::Identity(N, N);
    double res = 0.0;
    for (int a = 0; a < cnt; ++a) {
        res = std::max(res, (rep.alphas[a] - rep.alphas[a].adjoint()).norm());
        for (int b = a; b < cnt; ++b) {
            Mat ac = rep.alphas[a] * rep.alphas[b] + rep.alphas[b] * rep.alphas[a];
            if (a == b) ac -= 2.0 * id;
            res = std::max(res, ac.norm());
        }
    }
    rpt.max_float_residual = res;
    rpt.hermitian = rpt.anticommute = res <= 1e-12;
    return rpt;
}

Mat dirac_symbol(const CliffordRep& rep, const RVec& p) {
    if (p.size() != rep.n) throw std::invalid_argument("dirac_symbol: dimension mismatch");
    Mat s = Mat::Zero(rep.N, rep.N);
    for (int j = 0; j < rep.n; ++j) s += p(j) * rep.alphas[j];
    return s;
}

Mat beta_diagonalizer(const CliffordRep& rep) {
    const Mat& b = rep.beta();
    Mat U = Mat::Zero(rep.N, rep.N);
    if (b.isDiagonal(0.0)) {
        // exact permutation: -1 eigenvectors first
        int col = 0;
        for (double sgn : {-1.0, 1.0})
            for (int i = 0; i < rep.N; ++i)
                if (b(i, i).real() == sgn) U(i, col++) = 1.0;
        if (col == rep.N) return U;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(b);
    return es.eigenvectors();  // eigenvalues sorted ascending: -1 block first
}

Mat diagonalizer(const CliffordRep& rep, const RVec& omega) {
    if (omega.size() != rep.n) throw std::invalid_argument("diagonalizer: dimension mismatch");
    if (!(std::abs(omega.norm() - 1.0) <= 1e-14))
        throw std::invalid_argument("diagonalizer: direction must have unit norm");
    const Mat T = (rep.beta() + dirac_symbol(rep, omega)) / std::sqrt(2.0);
    return T * beta_diagonalizer(rep);
}

}  // namespace dirac::clifford
