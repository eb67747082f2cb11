#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "coreep/linalg.hpp"
#include "support/test_matrices.hpp"

using coreep::Complex;
using coreep::Matrix;
using namespace testsupport;

TEST_CASE("svd of simple matrices") {
    SUBCASE("identity") {
        const auto f = coreep::svd(Matrix::Identity(3, 3));
        for (int i = 0; i < 3; ++i) CHECK(f.singular_values(i) == doctest::Approx(1.0));
    }
    SUBCASE("zero") {
        const auto f = coreep::svd(Matrix::Zero(2, 2));
        CHECK(f.singular_values(0) == 0.0);
        CHECK(f.singular_values(1) == 0.0);
    }
    SUBCASE("diagonal 3, 4 sorts to 4, 3") {
        const auto f = coreep::svd(real_matrix(2, 2, {3, 0, 0, 4}));
        CHECK(f.singular_values(0) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(f.singular_values(1) == doctest::Approx(3.0).epsilon(1e-14));
    }
}

TEST_CASE("svd reconstruction on random matrices") {
    std::mt19937_64 rng(1001);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 11);
        const Matrix a = random_gaussian(n, n, rng);
        const auto f = coreep::svd(a);

        Matrix sigma = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) sigma(i, i) = f.singular_values(i);
        const Matrix reconstructed = f.u * sigma * f.v.adjoint();

        Eigen::VectorXcd x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(normal(rng), normal(rng));
        x /= x.norm();

        const double norm_a = coreep::spectral_norm(a);
        CHECK((reconstructed * x - a * x).norm() <= 1e-10 * norm_a);

        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            CHECK(f.singular_values(i) >= f.singular_values(i + 1));
        }
        CHECK((f.u.adjoint() * f.u - Matrix::Identity(n, n)).norm() <= 1e-12 * n);
        CHECK((f.v.adjoint() * f.v - Matrix::Identity(n, n)).norm() <= 1e-12 * n);
    }
}

TEST_CASE("numerical rank") {
    SUBCASE("rank-1 worked example") {
        const Matrix a = real_matrix(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 0});
        CHECK(coreep::numerical_rank(a) == 1);
    }
    SUBCASE("zero matrix") { CHECK(coreep::numerical_rank(Matrix::Zero(3, 3)) == 0); }
    SUBCASE("diag(1, 0)") { CHECK(coreep::numerical_rank(real_matrix(2, 2, {1, 0, 0, 0})) == 1); }
    SUBCASE("explicit tolerance") {
        const Matrix a = real_matrix(2, 2, {1, 0, 0, 1e-6});
        CHECK(coreep::numerical_rank(a) == 2);
        CHECK(coreep::numerical_rank(a, 1e-3) == 1);
    }
    SUBCASE("AUTO threshold is scale invariant") {
        std::mt19937_64 rng(1002);
        for (int trial = 0; trial < 10; ++trial) {
            const auto im = random_indexed_matrix(8, 2, rng);
            const auto base = coreep::numerical_rank(im.a);
            for (double c : {1e-6, 0.37, 1e6}) {
                CHECK(coreep::numerical_rank(c * im.a) == base);
            }
        }
    }
}

TEST_CASE("spectral norm") {
    CHECK(coreep::spectral_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0));
    CHECK(coreep::spectral_norm(real_matrix(2, 2, {1, 0, 0, 0.1})) == doctest::Approx(1.0));

    // rank-1 matrix: spectral norm equals the Frobenius norm
    CHECK(coreep::spectral_norm(sec4_e(0.1)) ==
          doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-13));

    std::mt19937_64 rng(1003);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_gaussian(6, 6, rng);
        const Matrix b = random_gaussian(6, 6, rng);
        CHECK(coreep::spectral_norm(a * b) <=
              coreep::spectral_norm(a) * coreep::spectral_norm(b) + 1e-10);
        CHECK(coreep::spectral_norm(a.adjoint()) ==
              doctest::Approx(coreep::spectral_norm(a)).epsilon(1e-12));
    }
}

TEST_CASE("ordered Schur") {
    SUBCASE("diag(0, 5) reorders the nonzero eigenvalue first") {
        const auto r = coreep::ordered_schur(real_matrix(2, 2, {0, 0, 0, 5}));
        CHECK(r.split == 1);
        CHECK(std::abs(r.r(0, 0)) == doctest::Approx(5.0));
        CHECK(std::abs(r.r(1, 1)) <= 1e-12);
    }
    SUBCASE("nilpotent has split 0") {
        const auto r = coreep::ordered_schur(real_matrix(2, 2, {0, 1, 0, 0}));
        CHECK(r.split == 0);
    }
    SUBCASE("identity has split n") {
        CHECK(coreep::ordered_schur(Matrix::Identity(2, 2)).split == 2);
    }
    SUBCASE("non-square is rejected") {
        CHECK_THROWS_AS(coreep::ordered_schur(Matrix::Zero(2, 3)), coreep::Error);
    }

    SUBCASE("unitarity, reconstruction and trailing nilpotency") {
        std::mt19937_64 rng(1004);
        std::vector<Matrix> cases = {ex21_limit(), ex21_term(10),
                                     real_matrix(3, 3, {1, 2, 0, 0, 0, 1, 0, 0, 0})};
        for (int trial = 0; trial < 8; ++trial) {
            cases.push_back(random_indexed_matrix(7, 1 + static_cast<int>(trial % 3), rng).a);
        }
        for (const Matrix& a : cases) {
            const Eigen::Index n = a.rows();
            const auto r = coreep::ordered_schur(a);
            CHECK((r.q.adjoint() * r.q - Matrix::Identity(n, n)).norm() <= 1e-12 * n);
            CHECK(coreep::spectral_norm(r.q * r.r * r.q.adjoint() - a) <=
                  1e-12 * std::max(1.0, coreep::spectral_norm(a)));

            const Eigen::Index m = n - r.split;
            if (m > 0) {
                const Matrix trailing = r.r.bottomRightCorner(m, m);
                Matrix power = Matrix::Identity(m, m);
                for (Eigen::Index i = 0; i < m; ++i) power = power * trailing;
                const double norm_a = coreep::spectral_norm(a);
                CHECK(coreep::spectral_norm(power) <=
                      1e-8 * std::pow(std::max(norm_a, 1e-30), static_cast<double>(m)));
            }
        }
    }
}

TEST_CASE("matrix exponential") {
    SUBCASE("zero gives identity") {
        CHECK(coreep::spectral_norm(coreep::matrix_exponential(Matrix::Zero(3, 3)) -
                                    Matrix::Identity(3, 3)) <= 1e-15);
    }
    SUBCASE("diagonal case") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 0) = Complex(0.3, 0.0);
        a(1, 1) = Complex(-2.0, 1.5);
        const Matrix e = coreep::matrix_exponential(a);
        CHECK(std::abs(e(0, 0) - std::exp(Complex(0.3, 0.0))) <= 1e-13);
        CHECK(std::abs(e(1, 1) - std::exp(Complex(-2.0, 1.5))) <= 1e-13);
        CHECK(std::abs(e(0, 1)) <= 1e-15);
    }
    SUBCASE("nilpotent truncates the series") {
        const Matrix e = coreep::matrix_exponential(real_matrix(2, 2, {0, 1, 0, 0}));
        CHECK(std::abs(e(0, 0) - 1.0) <= 1e-14);
        CHECK(std::abs(e(0, 1) - 1.0) <= 1e-14);
        CHECK(std::abs(e(1, 0)) <= 1e-14);
        CHECK(std::abs(e(1, 1) - 1.0) <= 1e-14);
    }
    SUBCASE("2x2 triangular closed form") {
        // exp([[a, c], [0, b]]) has off-diagonal c (e^a - e^b) / (a - b)
        const double a = -1.0, b = -2.0, c = 1.0;
        const Matrix e = coreep::matrix_exponential(real_matrix(2, 2, {a, c, 0, b}));
        CHECK(std::abs(e(0, 0) - std::exp(a)) <= 1e-14);
        CHECK(std::abs(e(1, 1) - std::exp(b)) <= 1e-14);
        CHECK(std::abs(e(0, 1) - c * (std::exp(a) - std::exp(b)) / (a - b)) <= 1e-14);
    }
    SUBCASE("matches the Taylor series for moderate norms") {
        std::mt19937_64 rng(1005);
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng() % 6);
            Matrix a = random_gaussian(n, n, rng);
            a *= (1.0 + (trial % 9)) / coreep::spectral_norm(a); // norms 1..9

            Matrix series = Matrix::Identity(n, n);
            Matrix term = Matrix::Identity(n, n);
            for (int i = 1; i <= 60; ++i) {
                term = term * a / static_cast<double>(i);
                series += term;
            }
            const Matrix e = coreep::matrix_exponential(a);
            CHECK(coreep::spectral_norm(e - series) <= 1e-12 * coreep::spectral_norm(e));
        }
    }
    SUBCASE("overflow guard") {
        CHECK_THROWS_AS(coreep::matrix_exponential(1e9 * Matrix::Identity(2, 2)),
                        coreep::Error);
    }
}
