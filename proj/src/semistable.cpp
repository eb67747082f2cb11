#include "coreep/semistable.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "coreep/geninv.hpp"

namespace coreep {

namespace {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Nodes are the Legendre roots, found by Newton from the Chebyshev guess.
GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) raise(ErrorKind::ParseError, "quadrature order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    const int n = order;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(i)] = x;
        rule.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Composite Gauss-Legendre of f over [0, t_max] with Kahan-compensated
// accumulation so the result does not depend on summation luck.
Matrix integrate(const std::function<Matrix(double)>& f, double t_max, int panels,
                 int gl_order, Eigen::Index n) {
    const GaussLegendreRule rule = gauss_legendre(gl_order);
    Matrix sum = Matrix::Zero(n, n);
    Matrix compensation = Matrix::Zero(n, n);
    const double h = t_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double left = p * h;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = left + 0.5 * h * (rule.nodes[i] + 1.0);
            const Matrix term = (0.5 * h * rule.weights[i]) * f(t);
            const Matrix y = term - compensation;
            const Matrix t_next = sum + y;
            compensation = (t_next - sum) - y;
            sum = t_next;
        }
    }
    return sum;
}

struct QuadratureOutcome {
    Matrix value;
    double t_max;
    int panels;
};

// Refine panel counts until two successive composites agree to the target, or
// honor a fixed panel count.
QuadratureOutcome adaptive_integrate(const std::function<Matrix(double)>& f, double t_max,
                                     const QuadratureConfig& cfg, Eigen::Index n) {
    if (cfg.panels > 0) {
        return {integrate(f, t_max, cfg.panels, cfg.gl_order, n), t_max, cfg.panels};
    }
    int panels = 4;
    Matrix coarse = integrate(f, t_max, panels, cfg.gl_order, n);
    while (panels <= 4096) {
        Matrix fine = integrate(f, t_max, 2 * panels, cfg.gl_order, n);
        const double scale = std::max(spectral_norm(fine), 1.0);
        if (spectral_norm(fine - coarse) <= cfg.target_rel_error * scale) {
            return {std::move(fine), t_max, 2 * panels};
        }
        coarse = std::move(fine);
        panels *= 2;
    }
    raise(ErrorKind::TruncationInsufficient, "panel refinement did not converge");
}

double auto_t_max(double abscissa, double target_rel_error) {
    // Integrand decays like exp(abscissa * t) up to polynomial factors; the
    // 1.5 factor is margin for those factors.
    return std::log(1.0 / target_rel_error) * 1.5 / std::abs(abscissa);
}

} // namespace

StabilityVerdict classify_stability(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) raise(ErrorKind::ShapeMismatch, "stability needs a square matrix");
    const Eigen::Index n = a.rows();

    StabilityVerdict verdict;
    verdict.index = index_of(a);
    verdict.spectral_abscissa_nonzero = -std::numeric_limits<double>::infinity();

    if (n == 0) {
        verdict.is_stable = true;
        verdict.is_semistable = true;
        return verdict;
    }

    Eigen::ComplexEigenSolver<Matrix> eig(a, false);
    const double tau =
        tol >= 0.0 ? tol : static_cast<double>(n) * spectral_norm(a) * kMachineEps;

    bool all_nonzero_negative = true;
    bool any_zero = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex lambda = eig.eigenvalues()(i);
        if (std::abs(lambda) <= tau) {
            any_zero = true;
            continue;
        }
        verdict.spectral_abscissa_nonzero =
            std::max(verdict.spectral_abscissa_nonzero, lambda.real());
        if (lambda.real() >= 0.0) all_nonzero_negative = false;
    }

    verdict.is_semistable = verdict.index <= 1 && all_nonzero_negative;
    verdict.is_stable = verdict.index == 0 && !any_zero && all_nonzero_negative;
    return verdict;
}

IntegralResult integral_inverse_stable(const Matrix& a, const QuadratureConfig& cfg) {
    const StabilityVerdict verdict = classify_stability(a);
    if (!verdict.is_stable) {
        raise(ErrorKind::NotStable, "integral representation needs a stable matrix");
    }
    const Eigen::Index n = a.rows();
    const double abscissa = verdict.spectral_abscissa_nonzero;

    double t_max = cfg.t_max > 0.0 ? cfg.t_max : auto_t_max(abscissa, cfg.target_rel_error);
    const auto integrand = [&a](double t) { return matrix_exponential(t * a); };

    double tail = spectral_norm(matrix_exponential(t_max * a)) / std::abs(abscissa);
    if (cfg.t_max > 0.0) {
        if (tail > cfg.target_rel_error) {
            raise(ErrorKind::TruncationInsufficient,
                  "tail estimate " + std::to_string(tail) + " exceeds the target");
        }
    } else {
        for (int attempt = 0; attempt < 8 && tail > cfg.target_rel_error; ++attempt) {
            t_max *= 1.5;
            tail = spectral_norm(matrix_exponential(t_max * a)) / std::abs(abscissa);
        }
        if (tail > cfg.target_rel_error) {
            raise(ErrorKind::TruncationInsufficient, "decay too slow to truncate the integral");
        }
    }

    QuadratureOutcome outcome = adaptive_integrate(integrand, t_max, cfg, n);
    return {-outcome.value, outcome.t_max, outcome.panels, tail};
}

IntegralResult integral_core_ep_perturbed(const Matrix& a, const Matrix& e,
                                          const QuadratureConfig& cfg, double tol) {
    if (a.rows() != a.cols()) raise(ErrorKind::ShapeMismatch, "A must be square");
    if (e.rows() != a.rows() || e.cols() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, "perturbation must match the shape of A");
    }
    const Eigen::Index n = a.rows();

    const StabilityVerdict verdict = classify_stability(a);
    if (!verdict.is_semistable) {
        raise(ErrorKind::NotSemistable, "the base matrix is not semistable");
    }

    const Matrix coreep_a = core_ep_inverse(a, tol).x;
    const double case1_tol = (tol >= 0.0 ? tol : 1e-8) * spectral_norm(e);
    if (spectral_norm(e - coreep_a * a * e) > case1_tol ||
        spectral_norm(e - e * a * coreep_a) > case1_tol) {
        raise(ErrorKind::Case1Violated,
              "perturbation is not confined to the nonsingular part of A");
    }

    const Matrix projector = a * coreep_a; // A coreep(A), Hermitian idempotent
    if (spectral_norm(projector) == 0.0) {
        return {Matrix::Zero(n, n), 0.0, 0, 0.0};
    }

    // Stability premise for the perturbed nonsingular part, read off the
    // T block of the perturbed decomposition.
    const Matrix ae = a + e;
    const CoreEpDecomposition dec = core_ep_decompose(ae, tol);
    double abscissa = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < dec.t.rows(); ++i) {
        abscissa = std::max(abscissa, dec.t(i, i).real());
    }
    if (!(abscissa < 0.0)) {
        raise(ErrorKind::PerturbedCoreUnstable,
              "perturbed nonsingular part has a nonnegative eigenvalue");
    }

    const auto integrand = [&ae, &projector](double t) {
        return matrix_exponential(t * ae) * projector;
    };

    double t_max = cfg.t_max > 0.0 ? cfg.t_max : auto_t_max(abscissa, cfg.target_rel_error);
    double tail =
        spectral_norm(matrix_exponential(t_max * ae) * projector) / std::abs(abscissa);
    if (cfg.t_max > 0.0) {
        if (tail > cfg.target_rel_error) {
            raise(ErrorKind::TruncationInsufficient,
                  "tail estimate " + std::to_string(tail) + " exceeds the target");
        }
    } else {
        for (int attempt = 0; attempt < 8 && tail > cfg.target_rel_error; ++attempt) {
            t_max *= 1.5;
            tail = spectral_norm(matrix_exponential(t_max * ae) * projector) / std::abs(abscissa);
        }
        if (tail > cfg.target_rel_error) {
            raise(ErrorKind::TruncationInsufficient, "decay too slow to truncate the integral");
        }
    }

    QuadratureOutcome outcome = adaptive_integrate(integrand, t_max, cfg, n);
    return {-outcome.value, outcome.t_max, outcome.panels, tail};
}

} // namespace coreep
