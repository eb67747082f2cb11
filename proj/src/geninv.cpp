#include "coreep/geninv.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace coreep {

Matrix matrix_power(const Matrix& a, int p) {
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < p; ++i) result = result * a;
    return result;
}

double power_rank_tolerance(const Matrix& a, int j) {
    const double dim = static_cast<double>(std::max(a.rows(), a.cols()));
    const double norm_a = spectral_norm(a);
    if (j <= 1) return dim * norm_a * kMachineEps;
    return dim * std::pow(kMachineEps, 2.0 / 3.0) * std::pow(norm_a, j);
}

Eigen::Index power_rank(const Matrix& a, int j, double tol) {
    if (j == 0) return a.rows();
    const double tau = tol >= 0.0 ? tol : power_rank_tolerance(a, j);
    return numerical_rank(matrix_power(a, j), tau);
}

namespace {

std::map<std::string, double> core_ep_residuals(const Matrix& a, const Matrix& x, int k) {
    const Matrix ak = matrix_power(a, k);
    const Matrix ak1 = ak * a;
    const Matrix ax = a * x;
    return {
        {"XA^{k+1}=A^k", spectral_norm(x * ak1 - ak)},
        {"AX^2=X", spectral_norm(ax * x - x)},
        {"(AX)*=AX", spectral_norm(ax - ax.adjoint())},
    };
}

void require_square(const Matrix& a, const char* op) {
    if (a.rows() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, std::string(op) + " needs a square matrix");
    }
}

} // namespace

int index_of(const Matrix& a, double tol) {
    require_square(a, "index computation");
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 0;

    Eigen::Index previous = n; // rank of A^0
    for (int j = 1; j <= n; ++j) {
        const Eigen::Index current = power_rank(a, j, tol);
        if (current >= previous) return j - 1;
        previous = current;
    }
    return n;
}

InverseResult moore_penrose(const Matrix& a, double tol) {
    const SvdResult f = svd(a);
    const double tau =
        tol >= 0.0 ? tol
                   : static_cast<double>(std::max(a.rows(), a.cols())) *
                         (f.singular_values.size() > 0 ? f.singular_values(0) : 0.0) *
                         kMachineEps;

    Matrix x = Matrix::Zero(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < f.singular_values.size(); ++i) {
        if (f.singular_values(i) > tau) {
            x += f.v.col(i) * f.u.col(i).adjoint() / f.singular_values(i);
        }
    }

    const Matrix ax = a * x;
    const Matrix xa = x * a;
    InverseResult result;
    result.x = std::move(x);
    result.residuals = {
        {"AXA=A", spectral_norm(a * result.x * a - a)},
        {"XAX=X", spectral_norm(result.x * a * result.x - result.x)},
        {"(AX)*=AX", spectral_norm(ax - ax.adjoint())},
        {"(XA)*=XA", spectral_norm(xa - xa.adjoint())},
    };
    result.k = 0;
    result.tol = tau;
    return result;
}

CoreEpDecomposition core_ep_decompose(const Matrix& a, double tol) {
    require_square(a, "core-EP decomposition");
    const Eigen::Index n = a.rows();
    const int k = index_of(a, tol);
    const Eigen::Index p = power_rank(a, k, tol);

    if (n == 0) return {Matrix(0, 0), Matrix(0, 0), Matrix(0, 0), Matrix(0, 0), 0};

    // Eigenvalue magnitudes decide the Schur split. The threshold is placed in
    // the gap around the p-th largest magnitude so the split agrees with
    // rank(A^k); no gap means the tolerances genuinely conflict.
    Eigen::ComplexEigenSolver<Matrix> eig(a, false);
    std::vector<double> mags(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) mags[static_cast<size_t>(i)] = std::abs(eig.eigenvalues()(i));
    std::sort(mags.begin(), mags.end(), std::greater<>());

    double tau;
    if (p == 0) {
        tau = spectral_norm(a);
    } else if (p == n) {
        tau = 0.5 * mags.back();
        if (!(tau > 0.0)) {
            raise(ErrorKind::DecompositionInconsistency,
                  "rank says nonsingular but an eigenvalue is numerically zero");
        }
    } else {
        const double hi = mags[static_cast<size_t>(p - 1)];
        const double lo = mags[static_cast<size_t>(p)];
        if (!(hi > 10.0 * lo)) {
            raise(ErrorKind::DecompositionInconsistency,
                  "no eigenvalue-magnitude gap at the rank boundary");
        }
        tau = lo > 0.0 ? std::sqrt(hi * lo) : 0.5 * hi;
    }

    OrderedSchurResult schur = ordered_schur(a, tau);
    if (schur.split != p) {
        raise(ErrorKind::DecompositionInconsistency,
              "Schur split disagrees with rank(A^k)");
    }

    CoreEpDecomposition dec;
    dec.u = std::move(schur.q);
    dec.t = schur.r.topLeftCorner(p, p);
    dec.s = schur.r.topRightCorner(p, n - p);
    dec.n = schur.r.bottomRightCorner(n - p, n - p);
    dec.k = k;
    return dec;
}

InverseResult core_ep_inverse(const Matrix& a, double tol) {
    require_square(a, "core-EP inverse");
    const int k = index_of(a, tol);
    const Eigen::Index n = a.rows();

    const Matrix ak = matrix_power(a, k);
    const Matrix ak1 = ak * a;
    const double trunc = tol >= 0.0 ? tol : power_rank_tolerance(a, k + 1);
    const Matrix formula_route = ak * moore_penrose(ak1, trunc).x;

    // Independent route through the decomposition basis.
    const CoreEpDecomposition dec = core_ep_decompose(a, tol);
    const Eigen::Index p = dec.t.rows();
    Matrix block = Matrix::Zero(n, n);
    block.topLeftCorner(p, p) =
        dec.t.triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
    const Matrix decomposition_route = dec.u * block * dec.u.adjoint();

    const double norm_x = std::max(spectral_norm(formula_route), spectral_norm(decomposition_route));
    if (spectral_norm(formula_route - decomposition_route) > 1e-8 * norm_x) {
        raise(ErrorKind::RouteDisagreement,
              "power-formula and decomposition routes disagree beyond 1e-8");
    }

    InverseResult result;
    result.x = formula_route;
    result.residuals = core_ep_residuals(a, result.x, k);
    result.k = k;
    result.tol = trunc;
    return result;
}

InverseResult drazin_inverse(const Matrix& a, double tol) {
    require_square(a, "Drazin inverse");
    const InverseResult cep = core_ep_inverse(a, tol);
    const int k = cep.k;

    const Matrix ak = matrix_power(a, k);
    const Matrix x = matrix_power(cep.x, k + 1) * ak;

    InverseResult result;
    result.x = x;
    const Matrix ax = a * x;
    result.residuals = {
        {"AXA^k=A^k", spectral_norm(ax * ak - ak)},
        {"XAX=X", spectral_norm(x * ax - x)},
        {"AX=XA", spectral_norm(ax - x * a)},
    };
    result.k = k;
    result.tol = cep.tol;
    return result;
}

InverseResult core_inverse(const Matrix& a, double tol) {
    require_square(a, "core inverse");
    const int k = index_of(a, tol);
    if (k > 1) {
        raise(ErrorKind::IndexTooLarge,
              "core inverse needs index <= 1, got " + std::to_string(k));
    }
    return core_ep_inverse(a, tol);
}

std::map<std::string, double> verify_core_ep(const Matrix& a, const Matrix& x, double tol) {
    require_square(a, "core-EP verification");
    if (x.rows() != a.rows() || x.cols() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, "candidate inverse shape differs from A");
    }
    return core_ep_residuals(a, x, index_of(a, tol));
}

std::map<std::string, double> inverse_identity_residuals(const Matrix& a, double tol) {
    require_square(a, "identity check");
    const int k = index_of(a, tol);

    const Matrix ak = matrix_power(a, k);
    const Matrix ak1 = ak * a;
    const Matrix ak2 = ak1 * a;
    const Matrix pk = moore_penrose(ak, tol >= 0.0 ? tol : power_rank_tolerance(a, k)).x;
    const Matrix pk1 = moore_penrose(ak1, tol >= 0.0 ? tol : power_rank_tolerance(a, k + 1)).x;
    const Matrix pk2 = moore_penrose(ak2, tol >= 0.0 ? tol : power_rank_tolerance(a, k + 2)).x;

    const InverseResult cep = core_ep_inverse(a, tol);
    const InverseResult drazin = drazin_inverse(a, tol);

    const Matrix proj_k = ak * pk;
    const Matrix proj_k1 = ak1 * pk1;
    const Matrix proj_k2 = ak2 * pk2;

    const Matrix route1 = drazin.x * proj_k;  // A^D A^k (A^k)+
    const Matrix route2 = drazin.x * proj_k1; // A^D A^{k+1} (A^{k+1})+
    const Matrix route3 = ak * pk1;           // A^k (A^{k+1})+

    const CoreEpDecomposition dec = core_ep_decompose(a, tol);
    const Eigen::Index p = dec.t.rows();
    Matrix block = Matrix::Zero(a.rows(), a.cols());
    block.topLeftCorner(p, p) =
        dec.t.triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
    const Matrix route4 = dec.u * block * dec.u.adjoint();

    return {
        {"A^D A^k(A^k)+ = coreep", spectral_norm(route1 - cep.x)},
        {"A^k(A^k)+ = A^{k+1}(A^{k+1})+", spectral_norm(proj_k - proj_k1)},
        {"A^k(A^k)+ = A^{k+2}(A^{k+2})+", spectral_norm(proj_k - proj_k2)},
        {"(coreep)^{k+1} A^k = A^D", spectral_norm(matrix_power(cep.x, k + 1) * ak - drazin.x)},
        {"A^D A^k(A^k)+ = A^D A^{k+1}(A^{k+1})+", spectral_norm(route1 - route2)},
        {"A^D A^k(A^k)+ = A^k(A^{k+1})+", spectral_norm(route1 - route3)},
        {"A^D A^{k+1}(A^{k+1})+ = A^k(A^{k+1})+", spectral_norm(route2 - route3)},
        {"A^k(A^{k+1})+ = decomposition", spectral_norm(route3 - route4)},
    };
}

} // namespace coreep
