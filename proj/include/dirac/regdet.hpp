#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "dirac/types.hpp"

namespace dirac::regdet {

using Rational = boost::multiprecision::cpp_rational;

/// Noncommutative polynomial in A, B with exact rational coefficients; words are strings over {'A','B'}.
class WordExpression {
public:
    WordExpression() = default;
    static WordExpression word(const std::string& w, const Rational& c = 1);

    WordExpression& operator+=(const WordExpression& o);
    WordExpression operator+(const WordExpression& o) const;
    WordExpression operator-(const WordExpression& o) const;
    WordExpression operator*(const WordExpression& o) const;
    WordExpression scaled(const Rational& c) const;

    Rational coefficient(const std::string& w) const;
    const std::map<std::string, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_length() const;
    int max_length() const;

    Mat evaluate(const Mat& A, const Mat& B) const;
    std::string to_string() const;

private:
    void add(const std::string& w, const Rational& c);
    std::map<std::string, Rational> terms_;
};

/// det_k(I + A) = prod_j (1 + l_j) exp(sum_{m<k} (-1)^m l_j^m / m) over the eigenvalues l_j of A.
cplx regdet(int k, const Mat& A);
cplx regdet_from_eigenvalues(int k, const CVec& eigenvalues);

/// x_k: sum over j < k and subsets S of {1..j} with j + |S| >= k of (-1)^|S| j^{-1} y_S.
WordExpression xk_words(int k);
/// Companion sum over j + |S| <= k - 1; x_k + y_k = sum_{j<k} j^{-1} (A + B - AB)^j.
WordExpression yk_words(int k);
WordExpression binomial_words(int k);

/// X_k(A,B) as a matrix, k in 1..5.
Mat xk_correction(int k, const Mat& A, const Mat& B);
/// Closed-form tr X_k(A,B), k in 1..4.
cplx trace_xk(int k, const Mat& A, const Mat& B);

/// |det_k((I-A)(I-B)) - det_k(I-A) det_k(I-B) exp(tr X_k)| / |det_k((I-A)(I-B))|
double product_residual(int k, const Mat& A, const Mat& B);

/// z_{k1,k2} from the labelled-partition definition.
WordExpression z_partition(int k1, int k2);
/// z_{k1,k2} from the coefficient formula sum_l (-1)^l C(n(w), l) / (k1 + k2 - l).
WordExpression z_closed(int k1, int k2);
/// Number of (linear) AB factors in w.
int ab_count(const std::string& w);
/// sum over the L(w) cyclic shifts of w of the coefficient in x.
Rational cyclic_shift_sum(const WordExpression& x, const std::string& w);

struct AuditReport {
    int k = 0;
    int dim = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double radius = 0.9;
    double max_residual = 0.0;
    double mean_residual = 0.0;
};

/// Product-formula audit over random Ginibre pairs scaled to operator norm `radius`.
AuditReport det_audit(int k, int dim, int trials, std::uint64_t seed, double radius = 0.9);

}  // namespace dirac::regdet
