#pragma once

#include <vector>

#include "dirac/types.hpp"

namespace dirac::clifford {

/// n+1 anticommuting Hermitian N x N matrices; the last one is beta.
struct CliffordRep {
    int n = 0;
    int N = 0;
    std::vector<Mat> alphas;  // alpha_1 .. alpha_n, alpha_{n+1} = beta

    const Mat& alpha(int j) const { return alphas.at(j - 1); }  // 1-based
    const Mat& beta() const { return alphas.back(); }
};

/// Representation size 2^floor((n+1)/2).
int rep_size(int n);

/// Deterministic integer-valued representation built by tensor recursion from Pauli matrices.
CliffordRep build_clifford(int n);

/// Conjugate every generator by a unitary W (alpha_j -> W alpha_j W*).
CliffordRep conjugated(const CliffordRep& rep, const Mat& W);

struct RelationReport {
    bool entries_gaussian_integer = true;  // all entries in {0, +-1, +-i}
    bool hermitian = true;
    bool anticommute = true;  // exact, integer arithmetic
    double max_float_residual = 0.0;  // for reps that are not integer-valued
};

/// Check alpha_j* = alpha_j and alpha_j alpha_k + alpha_k alpha_j = 2 delta_jk I.
/// Integer-valued reps are checked exactly; others fall back to a floating residual.
RelationReport check_relations(const CliffordRep& rep);

/// sum_j p_j alpha_j
Mat dirac_symbol(const CliffordRep& rep, const RVec& p);

/// Unitary U with beta = U diag(-I, I) U*.
Mat beta_diagonalizer(const CliffordRep& rep);

/// T(omega) U with T(omega) = 2^{-1/2}(beta + alpha.omega); conjugates alpha.omega to diag(-I, I).
Mat diagonalizer(const CliffordRep& rep, const RVec& omega);

}  // namespace dirac::clifford
