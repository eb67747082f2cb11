#include "coreep/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace coreep {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::FactorizationFailure: return "FactorizationFailure";
        case ErrorKind::OverflowFailure: return "OverflowFailure";
        case ErrorKind::DecompositionInconsistency: return "DecompositionInconsistency";
        case ErrorKind::RouteDisagreement: return "RouteDisagreement";
        case ErrorKind::IndexTooLarge: return "IndexTooLarge";
        case ErrorKind::PremiseViolated: return "PremiseViolated";
        case ErrorKind::NotARankJump: return "NotARankJump";
        case ErrorKind::NotStable: return "NotStable";
        case ErrorKind::NotSemistable: return "NotSemistable";
        case ErrorKind::Case1Violated: return "Case1Violated";
        case ErrorKind::PerturbedCoreUnstable: return "PerturbedCoreUnstable";
        case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    }
    return "UnknownError";
}

bool is_finite(const Matrix& a) {
    return a.array().isFinite().all();
}

SvdResult svd(const Matrix& a) {
    if (a.size() == 0) {
        return {Matrix::Identity(a.rows(), a.rows()), RealVector(0),
                Matrix::Identity(a.cols(), a.cols())};
    }
    Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult result{solver.matrixU(), solver.singularValues(), solver.matrixV()};
    if (!is_finite(result.u) || !is_finite(result.v) ||
        !result.singular_values.array().isFinite().all()) {
        raise(ErrorKind::FactorizationFailure, "SVD produced non-finite values");
    }
    return result;
}

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

Eigen::Index numerical_rank(const Matrix& a, double tol) {
    if (a.size() == 0) return 0;
    RealVector sigma = Eigen::JacobiSVD<Matrix>(a).singularValues();
    double tau = tol >= 0.0
                     ? tol
                     : static_cast<double>(std::max(a.rows(), a.cols())) * sigma(0) * kMachineEps;
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tau) ++rank;
    return rank;
}

namespace {

// Unitary similarity swapping the diagonal entries of the 2x2 upper-triangular
// block at (i, i). Built from the eigenvector of the block for its trailing
// eigenvalue, so triangularity is preserved.
void swap_adjacent_diagonal(Matrix& r, Matrix& q, Eigen::Index i) {
    const Complex a = r(i, i);
    const Complex b = r(i, i + 1);
    const Complex c = r(i + 1, i + 1);
    const double scale = std::sqrt(std::norm(b) + std::norm(c - a));
    if (scale == 0.0) return; // equal eigenvalues, nothing to move
    const Complex x1 = b / scale;
    const Complex x2 = (c - a) / scale;

    Matrix g(2, 2);
    g << x1, -std::conj(x2), x2, std::conj(x1);

    r.middleRows(i, 2) = g.adjoint() * r.middleRows(i, 2);
    r.middleCols(i, 2) = r.middleCols(i, 2) * g;
    q.middleCols(i, 2) = q.middleCols(i, 2) * g;

    r(i, i) = c;
    r(i + 1, i + 1) = a;
    r(i + 1, i) = Complex(0, 0);
}

} // namespace

OrderedSchurResult ordered_schur(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, "Schur decomposition needs a square matrix");
    }
    const Eigen::Index n = a.rows();
    if (n == 0) return {Matrix(0, 0), Matrix(0, 0), 0};

    Eigen::ComplexSchur<Matrix> schur(a, true);
    if (schur.info() != Eigen::Success) {
        raise(ErrorKind::FactorizationFailure, "complex Schur iteration did not converge");
    }
    Matrix q = schur.matrixU();
    Matrix r = schur.matrixT();

    const double tau =
        tol >= 0.0 ? tol : static_cast<double>(n) * spectral_norm(a) * kMachineEps;

    // Bubble every above-threshold eigenvalue ahead of the below-threshold
    // ones; swaps only cross the class boundary, so equal eigenvalues never
    // get separated.
    bool moved = true;
    while (moved) {
        moved = false;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            const bool lead_zero = std::abs(r(i, i)) <= tau;
            const bool next_zero = std::abs(r(i + 1, i + 1)) <= tau;
            if (lead_zero && !next_zero) {
                swap_adjacent_diagonal(r, q, i);
                moved = true;
            }
        }
    }

    Eigen::Index split = 0;
    while (split < n && std::abs(r(split, split)) > tau) ++split;
    return {std::move(q), std::move(r), split};
}

Matrix matrix_exponential(const Matrix& a) {
    if (a.rows() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, "matrix exponential needs a square matrix");
    }
    const Eigen::Index n = a.rows();
    if (n == 0) return Matrix(0, 0);
    if (!is_finite(a)) {
        raise(ErrorKind::OverflowFailure, "matrix exponential input is not finite");
    }

    const double norm = spectral_norm(a);
    if (norm > 1e8) {
        raise(ErrorKind::OverflowFailure, "matrix norm too large for the exponential");
    }

    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Matrix scaled = a / std::pow(2.0, squarings);

    // Degree-13 Pade coefficients.
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};

    const Matrix identity = Matrix::Identity(n, n);
    const Matrix a2 = scaled * scaled;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;

    const Matrix u = scaled * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                               b[5] * a4 + b[3] * a2 + b[1] * identity);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * identity;

    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    if (!is_finite(result)) {
        raise(ErrorKind::OverflowFailure, "matrix exponential overflowed");
    }
    return result;
}

} // namespace coreep
