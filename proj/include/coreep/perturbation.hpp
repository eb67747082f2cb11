#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coreep/linalg.hpp"

namespace coreep {

/// Which perturbation regimes a pair (A, E) falls into.
///   case1: E = coreep(A) A E = E A coreep(A)   (range/null-space inclusions)
///   case2: both core-EP projectors unchanged by the perturbation
///   case3: rank(A^k) == rank((A+E)^k) at k = max(ind A, ind(A+E))
struct ConditionProfile {
    bool case1 = false;
    bool case2 = false;
    bool case3 = false;
    int k_a = 0;
    int k_ae = 0;
    int k_max = 0;
    std::map<std::string, double> residuals; // equality defects behind the flags
};

struct BoundReport {
    std::string name; // bound_3_2 | bound_3_3 | bound_3_5 | bound_3_6 |
                      // bound_3_7 | bound_3_12 | lower_3_8
    bool applicable = false;
    std::map<std::string, double> premise_values;
    std::optional<double> value; // present iff applicable
    std::optional<double> exact; // exact value of the bounded quantity
    std::vector<std::string> notes;
};

ConditionProfile classify(const Matrix& a, const Matrix& e, double tol = kAutoTol);

/// Binomial majorant of ||(A+E)^h - A^h||:
/// sum_{i=0}^{h-1} C(h, i) ||A||^i ||E||^(h-i).
double epsilon_poly(const Matrix& a, const Matrix& e, int h);
double epsilon_poly(double norm_a, double norm_e, int h);

struct Case1Bounds {
    BoundReport bound_3_2; // ||A+E inverse - inverse|| / ||inverse|| bound
    BoundReport bound_3_3; // condition-number form of the same bound
};

struct Case2Bounds {
    BoundReport bound_3_5; // relative-error bound (norm bound stored in premises)
    BoundReport bound_3_6; // condition-number form
};

struct Case3Bounds {
    BoundReport bound_3_7;  // norm bound on ||(A+E) core-EP inverse||
    BoundReport bound_3_12; // first-order relative-error bound C(A) ||E||/||A||
};

/// Throws PremiseViolated when ||coreep(A) E|| >= 1. The case-1 equality
/// defects are recorded in premise_values; when they exceed tolerance the
/// reports carry a note instead of a guarantee.
Case1Bounds bound_case1(const Matrix& a, const Matrix& e, double tol = kAutoTol);

Case2Bounds bound_case2(const Matrix& a, const Matrix& e, double tol = kAutoTol);

/// Throws PremiseViolated on a rank change at k or when the series premise
/// ||(A^(k+1))^+|| eps(A^(k+1)) < 1 fails.
Case3Bounds bound_case3(const Matrix& a, const Matrix& e, double tol = kAutoTol);

/// Lower bound ||(A+E) core-EP inverse|| >= eps(A^k)^(-1/k) when the rank at
/// k = max index strictly rises. Throws NotARankJump otherwise.
BoundReport lower_bound_rank_jump(const Matrix& a, const Matrix& e, double tol = kAutoTol);

/// ||(A+E) core-EP inverse - core-EP inverse|| / ||core-EP inverse||.
/// Returns +inf when the base inverse vanishes but the perturbed one does not.
double exact_relative_error(const Matrix& a, const Matrix& e, double tol = kAutoTol);

} // namespace coreep
