#include "dirac/regdet.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dirac/numerics.hpp"

namespace dirac::regdet {

WordExpression WordExpression::word(const std::string& w, const Rational& c) {
    for (char ch : w)
        if (ch != 'A' && ch != 'B') throw std::invalid_argument("WordExpression: letters must be A or B");
    WordExpression e;
    e.add(w, c);
    return e;
}

void WordExpression::add(const std::string& w, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

WordExpression& WordExpression::operator+=(const WordExpression& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

WordExpression WordExpression::operator+(const WordExpression& o) const {
    WordExpression r = *this;
    r += o;
    return r;
}

WordExpression WordExpression::operator-(const WordExpression& o) const { return *this + o.scaled(-1); }

WordExpression WordExpression::operator*(const WordExpression& o) const {
    WordExpression r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) r.add(w1 + w2, c1 * c2);
    return r;
}

WordExpression WordExpression::scaled(const Rational& c) const {
    WordExpression r;
    for (const auto& [w, v] : terms_) r.add(w, v * c);
    return r;
}

Rational WordExpression::coefficient(const std::string& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int WordExpression::min_length() const {
    int m = -1;
    for (const auto& [w, c] : terms_)
        if (m < 0 || static_cast<int>(w.size()) < m) m = static_cast<int>(w.size());
    return m;
}

int WordExpression::max_length() const {
    int m = -1;
    for (const auto& [w, c] : terms_) m = std::max(m, static_cast<int>(w.size()));
    return m;
}

Mat WordExpression::evaluate(const Mat& A, const Mat& B) const {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("WordExpression::evaluate: A and B must be square of equal size");
    const Eigen::Index d = A.rows();
    Mat out = Mat::Zero(d, d);
    // Words sharing a prefix reuse the partial product.
    std::string prev;
    std::vector<Mat> prefix{Mat::Identity(d, d)};
    for (const auto& [w, c] : terms_) {
        std::size_t common = 0;
        while (common < prev.size() && common < w.size() && prev[common] == w[common]) ++common;
        prefix.resize(common + 1);
        for (std::size_t i = common; i < w.size(); ++i) prefix.push_back(prefix.back() * (w[i] == 'A' ? A : B));
        prev = w;
        out += static_cast<double>(c) * prefix.back();
    }
    return out;
}

std::string WordExpression::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const Rational a = abs(c);
        if (a != 1 || w.empty()) os << a;
        if (a != 1 && !w.empty()) os << "*";
        os << w;
    }
    return os.str();
}

cplx regdet_from_eigenvalues(int k, const CVec& eigenvalues) {
    if (k < 1) throw std::invalid_argument("regdet: k must be >= 1");
    cplx prod(1.0, 0.0);
    cplx expo(0.0, 0.0);
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
        const cplx l = eigenvalues(j);
        prod *= 1.0 + l;
        cplx p = 1.0;
        for (int m = 1; m < k; ++m) {
            p *= -l;
            expo += p / static_cast<double>(m);
        }
    }
    return prod * std::exp(expo);
}

cplx regdet(int k, const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("regdet: matrix must be square");
    if (A.rows() == 0) return 1.0;
    Eigen::ComplexEigenSolver<Mat> es(A, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("regdet: eigenvalue solver did not converge");
    return regdet_from_eigenvalues(k, es.eigenvalues());
}

namespace {

const WordExpression& sum_ab() {
    static const WordExpression e = WordExpression::word("A") + WordExpression::word("B");
    return e;
}

const WordExpression& prod_ab() {
    static const WordExpression e = WordExpression::word("AB");
    return e;
}

// Sum over j < k, S subset of {1..j} selected by keep(j, |S|), of (-1)^|S| j^{-1} y_S.
template <class Keep>
WordExpression subset_sum(int k, Keep keep) {
    WordExpression total;
    for (int j = 1; j < k; ++j) {
        WordExpression inner;
        for (unsigned mask = 0; mask < (1u << j); ++mask) {
            const int s = __builtin_popcount(mask);
            if (!keep(j, s)) continue;
            WordExpression y = WordExpression::word("");
            for (int m = 0; m < j; ++m) y = y * ((mask >> m) & 1u ? prod_ab() : sum_ab());
            inner += (s % 2 ? y.scaled(-1) : y);
        }
        total += inner.scaled(Rational(1, j));
    }
    return total;
}

void check_pair(const Mat& A, const Mat& B, const char* who) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument(std::string(who) + ": A and B must be square of equal size");
}

}  // namespace

WordExpression xk_words(int k) {
    if (k < 1) throw std::invalid_argument("xk_words: k must be >= 1");
    return subset_sum(k, [k](int j, int s) { return j + s >= k; });
}

WordExpression yk_words(int k) {
    if (k < 1) throw std::invalid_argument("yk_words: k must be >= 1");
    return subset_sum(k, [k](int j, int s) { return j + s <= k - 1; });
}

WordExpression binomial_words(int k) {
    const WordExpression base = sum_ab() - prod_ab();
    WordExpression total;
    WordExpression power = WordExpression::word("");
    for (int j = 1; j < k; ++j) {
        power = power * base;
        total += power.scaled(Rational(1, j));
    }
    return total;
}

Mat xk_correction(int k, const Mat& A, const Mat& B) {
    check_pair(A, B, "xk_correction");
    if (k < 1 || k > 5) throw std::invalid_argument("xk_correction: k must be in 1..5");
    return xk_words(k).evaluate(A, B);
}

cplx trace_xk(int k, const Mat& A, const Mat& B) {
    check_pair(A, B, "trace_xk");
    if (k < 1 || k > 4) throw std::invalid_argument("trace_xk: k must be in 1..4");
    if (k == 1) return 0.0;
    const Mat AB = A * B;
    if (k == 2) return -AB.trace();
    const Mat AB2 = AB * AB;
    if (k == 3) return -(AB * A + B * AB - 0.5 * AB2).trace();
    const Mat A2 = A * A;
    const Mat B2 = B * B;
    return -(A2 * AB + A2 * B2 + AB * B2 + 0.5 * AB2 - AB2 * A - B * AB2 + AB2 * AB / 3.0).trace();
}

double product_residual(int k, const Mat& A, const Mat& B) {
    check_pair(A, B, "product_residual");
    const Eigen::Index d = A.rows();
    const Mat I = Mat::Identity(d, d);
    for (const Mat* F : {&A, &B}) {
        const RVec s = Eigen::JacobiSVD<Mat>(I - *F).singularValues();
        if (d > 0 && s(d - 1) <= 1e-14 * std::max(1.0, s(0)))
            throw std::domain_error("product_residual: I - A or I - B is singular");
    }
    // det_k(I - T) with T = A + B - AB
    const cplx lhs = regdet(k, -(A + B - A * B));
    const cplx tr = k <= 4 ? trace_xk(k, A, B) : xk_correction(k, A, B).trace();
    const cplx rhs = regdet(k, -A) * regdet(k, -B) * std::exp(tr);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

WordExpression z_partition(int k1, int k2) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("z_partition: negative index");
    if (k1 == 0 && k2 == 0) return {};
    if (k2 == 0) return WordExpression::word(std::string(k1, 'A'), Rational(1, k1));
    if (k1 == 0) return WordExpression::word(std::string(k2, 'B'), Rational(1, k2));
    WordExpression total;
    for (int j = 1; j <= k1 + k2; ++j) {
        // Each position gets label 0 (A), 1 (B) or 2 (AB).
        int combos = 1;
        for (int i = 0; i < j; ++i) combos *= 3;
        for (int code = 0; code < combos; ++code) {
            int c = code, na = 0, nb = 0, nab = 0;
            std::string w;
            for (int i = 0; i < j; ++i, c /= 3) {
                switch (c % 3) {
                    case 0: ++na; w += 'A'; break;
                    case 1: ++nb; w += 'B'; break;
                    default: ++nab; w += "AB"; break;
                }
            }
            if (na + nab != k1 || nb + nab != k2) continue;
            total += WordExpression::word(w, Rational(nab % 2 ? -1 : 1, j));
        }
    }
    return total;
}

int ab_count(const std::string& w) {
    int c = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == 'A' && w[i + 1] == 'B') ++c;
    return c;
}

WordExpression z_closed(int k1, int k2) {
    if (k1 < 1 || k2 < 1) return z_partition(k1, k2);
    const int L = k1 + k2;
    WordExpression total;
    for (unsigned mask = 0; mask < (1u << L); ++mask) {
        if (__builtin_popcount(mask) != k2) continue;
        std::string w;
        for (int i = 0; i < L; ++i) w += (mask >> i) & 1u ? 'B' : 'A';
        const int nw = ab_count(w);
        Rational coeff = 0;
        Rational binom = 1;
        for (int l = 0; l <= nw; ++l) {
            coeff += Rational(l % 2 ? -1 : 1) * binom / (L - l);
            binom = binom * (nw - l) / (l + 1);
        }
        total += WordExpression::word(w, coeff);
    }
    return total;
}

Rational cyclic_shift_sum(const WordExpression& x, const std::string& w) {
    Rational s = 0;
    std::string cur = w;
    for (std::size_t m = 0; m < w.size(); ++m) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        s += x.coefficient(cur);
    }
    return s;
}

AuditReport det_audit(int k, int dim, int trials, std::uint64_t seed, double radius) {
    if (k < 1) throw std::invalid_argument("det_audit: k must be >= 1");
    if (dim < 1 || trials < 1) throw std::invalid_argument("det_audit: dim and trials must be positive");
    std::vector<double> res(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(t + 1));
        std::uniform_real_distribution<double> u(0.1, 1.0);
        Mat A = numerics::ginibre(dim, dim, rng);
        Mat B = numerics::ginibre(dim, dim, rng);
        A *= radius * u(rng) / Eigen::JacobiSVD<Mat>(A).singularValues()(0);
        B *= radius * u(rng) / Eigen::JacobiSVD<Mat>(B).singularValues()(0);
        res[static_cast<std::size_t>(t)] = product_residual(k, A, B);
    }
    AuditReport r;
    r.k = k;
    r.dim = dim;
    r.trials = trials;
    r.seed = seed;
    r.radius = radius;
    double sum = 0.0;
    for (double v : res) {
        r.max_residual = std::max(r.max_residual, v);
        sum += v;
    }
    r.mean_residual = sum / trials;
    return r;
}

}  // namespace dirac::regdet
