#pragma once

#include <Eigen/Dense>
#include <complex>

#include "coreep/errors.hpp"

namespace coreep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Sentinel: let the operation pick its own tolerance.
inline constexpr double kAutoTol = -1.0;

/// Unit roundoff for IEEE double.
inline constexpr double kMachineEps = 2.220446049250313e-16;

struct SvdResult {
    Matrix u;                   // m x m unitary
    RealVector singular_values; // length min(m, n), nonincreasing
    Matrix v;                   // n x n unitary
};

struct OrderedSchurResult {
    Matrix q;           // unitary
    Matrix r;           // upper triangular, |r(i,i)| > tol for i < split
    Eigen::Index split; // number of leading "nonzero" eigenvalues
};

bool is_finite(const Matrix& a);

/// Full SVD with nonincreasing singular values.
SvdResult svd(const Matrix& a);

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& a);

/// Count of singular values above `tol`.
/// AUTO rule: tol = max(m, n) * sigma_max * machine epsilon.
Eigen::Index numerical_rank(const Matrix& a, double tol = kAutoTol);

/// Complex Schur form A = Q R Q* with eigenvalues of magnitude > tol moved to
/// the leading diagonal positions by adjacent unitary swaps.
/// AUTO rule: tol = n * ||A|| * machine epsilon.
OrderedSchurResult ordered_schur(const Matrix& a, double tol = kAutoTol);

/// Scaling-and-squaring with a degree-13 Pade approximant; the input is
/// scaled until its spectral norm is at most 0.5.
Matrix matrix_exponential(const Matrix& a);

} // namespace coreep
