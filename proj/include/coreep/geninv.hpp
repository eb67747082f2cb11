#pragma once

#include <map>
#include <string>

#include "coreep/linalg.hpp"

namespace coreep {

/// A = U [[T, S], [0, N]] U* with T nonsingular upper triangular and N
/// nilpotent; k is the index of A and T is rank(A^k) x rank(A^k).
struct CoreEpDecomposition {
    Matrix u;
    Matrix t;
    Matrix s;
    Matrix n;
    int k = 0;
};

/// A computed inverse together with the residual norms of its defining
/// equations, keyed by the equation they measure.
struct InverseResult {
    Matrix x;
    std::map<std::string, double> residuals;
    int k = 0;
    double tol = 0.0;
};

/// A^p by repeated multiplication; A^0 = I.
Matrix matrix_power(const Matrix& a, int p);

/// AUTO rank tolerance for the j-th power of A: repeated products contaminate
/// the exact zeros of A^j well above machine-epsilon-times-sigma_max, so for
/// j >= 2 the threshold is max(m,n) * eps^(2/3) * ||A||^j; j <= 1 keeps the
/// plain SVD rule.
double power_rank_tolerance(const Matrix& a, int j);

/// numerical_rank of A^j under the power-aware AUTO tolerance.
Eigen::Index power_rank(const Matrix& a, int j, double tol = kAutoTol);

/// Smallest k >= 0 with rank(A^k) == rank(A^(k+1)); at most n.
int index_of(const Matrix& a, double tol = kAutoTol);

/// Moore-Penrose inverse via SVD truncation. Residual keys:
/// "AXA=A", "XAX=X", "(AX)*=AX", "(XA)*=XA".
InverseResult moore_penrose(const Matrix& a, double tol = kAutoTol);

CoreEpDecomposition core_ep_decompose(const Matrix& a, double tol = kAutoTol);

/// Core-EP inverse X = A^k (A^(k+1))^+, cross-checked against the
/// decomposition route U [[T^-1, 0], [0, 0]] U*. Residual keys:
/// "XA^{k+1}=A^k", "AX^2=X", "(AX)*=AX".
InverseResult core_ep_inverse(const Matrix& a, double tol = kAutoTol);

/// Drazin inverse X = (core_ep(A))^(k+1) A^k. Residual keys:
/// "AXA^k=A^k", "XAX=X", "AX=XA".
InverseResult drazin_inverse(const Matrix& a, double tol = kAutoTol);

/// Core inverse: core-EP inverse restricted to index <= 1.
/// Throws IndexTooLarge otherwise.
InverseResult core_inverse(const Matrix& a, double tol = kAutoTol);

/// Residuals of the core-EP defining equations for a candidate X.
std::map<std::string, double> verify_core_ep(const Matrix& a, const Matrix& x,
                                             double tol = kAutoTol);

/// Residuals of the identity web tying the core-EP, Drazin and Moore-Penrose
/// inverses together (the three product formulas pairwise, the projector
/// stability A^k(A^k)^+ = A^j(A^j)^+ for j up to k+2, and the Drazin
/// back-substitution).
std::map<std::string, double> inverse_identity_residuals(const Matrix& a,
                                                         double tol = kAutoTol);

} // namespace coreep
