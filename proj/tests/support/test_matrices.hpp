#pragma once

// Shared test fixtures: the worked example matrices and random matrices with
// a prescribed index built as U [[T, S], [0, N]] U*, so the index and the
// core-EP inverse are known by construction.

#include <random>

#include "coreep/geninv.hpp"
#include "coreep/linalg.hpp"

namespace testsupport {

using coreep::Complex;
using coreep::Matrix;

inline Matrix real_matrix(Eigen::Index rows, Eigen::Index cols,
                          std::initializer_list<double> entries) {
    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (double v : entries) {
        m(idx / cols, idx % cols) = Complex(v, 0.0);
        ++idx;
    }
    return m;
}

// --- worked examples -------------------------------------------------------

inline Matrix ex13_a() { return real_matrix(2, 2, {1, 0, 0, 0.1}); }
inline Matrix ex13_e() { return real_matrix(2, 2, {0, 0, 0, -0.1}); }

inline Matrix ex14_a() { return real_matrix(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 0}); }
inline Matrix ex14_e() { return real_matrix(3, 3, {0.1, 0, 0, 0, 0, 0.1, 0, 0, 0}); }

inline Matrix ex15_a() { return ex14_a(); }
inline Matrix ex15_e() { return real_matrix(3, 3, {0.1, 0.1, 0, 0, 0, 0, 0, 0, 0}); }

inline Matrix ex21_limit() {
    return real_matrix(4, 4, {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0});
}

inline Matrix ex21_term(int j) {
    Matrix m = ex21_limit();
    m(0, 0) = Complex(1.0 / j, 0.0);
    return m;
}

inline Matrix sec4_a() { return ex14_a(); }

inline Matrix sec4_e(double eps) {
    Matrix e = Matrix::Zero(3, 3);
    e(0, 0) = eps;
    e(0, 1) = eps;
    return e;
}

// --- random constructions ---------------------------------------------------

inline Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    return m;
}

inline Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    if (n == 0) return Matrix(0, 0);
    Eigen::HouseholderQR<Matrix> qr(random_gaussian(n, n, rng));
    return qr.householderQ() * Matrix::Identity(n, n);
}

// Upper triangular with unit-scale diagonal and modest condition number.
inline Matrix random_triangular(Eigen::Index p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.7, 1.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::normal_distribution<double> normal(0.0, 0.2);
    while (true) {
        Matrix t = Matrix::Zero(p, p);
        for (Eigen::Index i = 0; i < p; ++i) {
            t(i, i) = std::polar(mag(rng), phase(rng));
            for (Eigen::Index j = i + 1; j < p; ++j) {
                t(i, j) = Complex(normal(rng), normal(rng));
            }
        }
        Eigen::JacobiSVD<Matrix> svd(t);
        const double cond =
            svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
        if (cond <= 50.0) return t;
    }
}

// Nilpotent block of exact nilpotency index k (1 <= k <= m); k = 1 is the
// zero block.
inline Matrix jordan_nilpotent(Eigen::Index m, int k, std::mt19937_64&) {
    Matrix n = Matrix::Zero(m, m);
    for (int i = 0; i + 1 < k; ++i) n(i, i + 1) = Complex(1.0, 0.0);
    return n;
}

struct IndexedMatrix {
    Matrix a;
    Matrix coreep_oracle; // U [[T^-1, 0], [0, 0]] U*
    Matrix u, t, s, n;    // the construction blocks
    int k = 0;
    Eigen::Index p = 0;   // rank(A^k)
};

// Random n x n matrix of index exactly k. Needs n >= k + 1 for k >= 1.
inline IndexedMatrix random_indexed_matrix(Eigen::Index n, int k, std::mt19937_64& rng) {
    IndexedMatrix result;
    result.k = k;

    Eigen::Index m; // nilpotent block size
    if (k == 0) {
        m = 0;
    } else {
        m = k;
        if (n - m >= 2 && rng() % 2 == 0) ++m; // vary the block size a little
    }
    const Eigen::Index p = n - m;
    result.p = p;

    result.u = random_unitary(n, rng);
    result.t = random_triangular(p, rng);
    result.s = 0.5 * random_gaussian(p, m, rng);
    result.n = jordan_nilpotent(m, k, rng);

    Matrix block = Matrix::Zero(n, n);
    block.topLeftCorner(p, p) = result.t;
    block.topRightCorner(p, m) = result.s;
    block.bottomRightCorner(m, m) = result.n;
    result.a = result.u * block * result.u.adjoint();

    Matrix inv_block = Matrix::Zero(n, n);
    inv_block.topLeftCorner(p, p) =
        result.t.triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
    result.coreep_oracle = result.u * inv_block * result.u.adjoint();
    return result;
}

// Perturbation confined to the nonsingular part: E = U [[E1, 0], [0, 0]] U*,
// scaled so ||coreep(A) E|| equals target_coreep_e.
inline Matrix case1_perturbation(const IndexedMatrix& im, double target_coreep_e,
                                 std::mt19937_64& rng) {
    Matrix e1 = random_gaussian(im.p, im.p, rng);
    Matrix block = Matrix::Zero(im.a.rows(), im.a.cols());
    block.topLeftCorner(im.p, im.p) = e1;
    Matrix e = im.u * block * im.u.adjoint();
    const double scale = coreep::spectral_norm(im.coreep_oracle * e);
    if (scale > 0.0) e *= target_coreep_e / scale;
    return e;
}

// Projector-preserving perturbation: E = U [[E1, E1 T^-1 S], [0, 0]] U* keeps
// both core-EP projectors of A, by block algebra.
inline Matrix case2_perturbation(const IndexedMatrix& im, double target_coreep_e,
                                 std::mt19937_64& rng) {
    Matrix e1 = random_gaussian(im.p, im.p, rng);
    const Matrix t_inv_s = im.t.triangularView<Eigen::Upper>().solve(im.s);
    Matrix block = Matrix::Zero(im.a.rows(), im.a.cols());
    block.topLeftCorner(im.p, im.p) = e1;
    block.topRightCorner(im.p, im.s.cols()) = e1 * t_inv_s;
    Matrix e = im.u * block * im.u.adjoint();
    const double scale = coreep::spectral_norm(im.coreep_oracle * e);
    if (scale > 0.0) e *= target_coreep_e / scale;
    return e;
}

// Rank-preserving perturbation hitting the top block rows: E = U [[E1, E2],
// [0, 0]] U* with independent E1, E2; generally breaks cases 1 and 2.
inline Matrix case3_perturbation(const IndexedMatrix& im, double target_norm,
                                 std::mt19937_64& rng) {
    Matrix block = Matrix::Zero(im.a.rows(), im.a.cols());
    block.topLeftCorner(im.p, im.p) = random_gaussian(im.p, im.p, rng);
    block.topRightCorner(im.p, im.s.cols()) = random_gaussian(im.p, im.s.cols(), rng);
    Matrix e = im.u * block * im.u.adjoint();
    const double scale = coreep::spectral_norm(e);
    if (scale > 0.0) e *= target_norm / scale;
    return e;
}

// Fills the nilpotent block with eps * I, so the rank at the max index rises.
inline Matrix rank_jump_perturbation(const IndexedMatrix& im, double eps) {
    const Eigen::Index m = im.n.rows();
    Matrix block = Matrix::Zero(im.a.rows(), im.a.cols());
    block.bottomRightCorner(m, m) = eps * Matrix::Identity(m, m);
    return im.u * block * im.u.adjoint();
}

// Semistable matrix: index <= 1 and the nonsingular part has eigenvalues with
// real part in [-1.5, -0.5].
inline IndexedMatrix random_semistable(Eigen::Index n, bool singular, std::mt19937_64& rng) {
    IndexedMatrix result;
    result.k = singular ? 1 : 0;
    const Eigen::Index m = singular ? 1 + static_cast<Eigen::Index>(rng() % 2) : 0;
    const Eigen::Index p = n - m;
    result.p = p;

    std::uniform_real_distribution<double> re(-1.5, -0.5);
    std::uniform_real_distribution<double> im_part(-1.0, 1.0);
    std::normal_distribution<double> normal(0.0, 0.2);

    result.u = random_unitary(n, rng);
    result.t = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        result.t(i, i) = Complex(re(rng), im_part(rng));
        for (Eigen::Index j = i + 1; j < p; ++j) {
            result.t(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    result.s = 0.5 * random_gaussian(p, m, rng);
    result.n = Matrix::Zero(m, m);

    Matrix block = Matrix::Zero(n, n);
    block.topLeftCorner(p, p) = result.t;
    block.topRightCorner(p, m) = result.s;
    result.a = result.u * block * result.u.adjoint();

    Matrix inv_block = Matrix::Zero(n, n);
    inv_block.topLeftCorner(p, p) =
        result.t.triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
    result.coreep_oracle = result.u * inv_block * result.u.adjoint();
    return result;
}

} // namespace testsupport
