#pragma once

#include "coreep/linalg.hpp"

namespace coreep {

struct QuadratureConfig {
    double t_max = -1.0;            // < 0: size from the decay rate
    int panels = -1;                // < 0: double until two refinements agree
    int gl_order = 8;               // Gauss-Legendre nodes per panel
    double target_rel_error = 1e-8;
};

struct StabilityVerdict {
    bool is_stable = false;     // index 0 and every eigenvalue in the open left half-plane
    bool is_semistable = false; // index <= 1 and every nonzero eigenvalue there
    double spectral_abscissa_nonzero = 0.0; // max Re over nonzero eigenvalues; -inf if none
    int index = 0;
};

StabilityVerdict classify_stability(const Matrix& a, double tol = kAutoTol);

struct IntegralResult {
    Matrix value;
    double t_max = 0.0;
    int panels = 0;
    double tail_estimate = 0.0;
};

/// -integral_0^t_max exp(tA) dt by composite Gauss-Legendre; equals A^-1 for
/// stable A up to the truncation tail. Throws NotStable or
/// TruncationInsufficient.
IntegralResult integral_inverse_stable(const Matrix& a, const QuadratureConfig& cfg = {});

/// -integral_0^t_max exp(t(A+E)) A coreep(A) dt for semistable A and a case-1
/// perturbation E whose perturbed nonsingular part stays stable; equals the
/// core-EP inverse of A+E up to quadrature error. Throws NotSemistable,
/// Case1Violated or PerturbedCoreUnstable.
IntegralResult integral_core_ep_perturbed(const Matrix& a, const Matrix& e,
                                          const QuadratureConfig& cfg = {},
                                          double tol = kAutoTol);

} // namespace coreep
