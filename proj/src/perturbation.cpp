#include "coreep/perturbation.hpp"

#include <cmath>
#include <limits>

#include "coreep/geninv.hpp"

namespace coreep {

namespace {

constexpr double kDefaultConditionTol = 1e-8;

void require_same_square(const Matrix& a, const Matrix& e) {
    if (a.rows() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, "perturbation analysis needs a square matrix");
    }
    if (e.rows() != a.rows() || e.cols() != a.cols()) {
        raise(ErrorKind::ShapeMismatch, "perturbation must match the shape of A");
    }
}

double binomial(int n, int k) {
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return result;
}

struct PairContext {
    Matrix coreep_a;
    Matrix coreep_ae;
    double norm_a;
    double norm_e;
    double norm_coreep_a;
    double norm_coreep_ae;
    int k_a;
    int k_ae;
};

PairContext make_context(const Matrix& a, const Matrix& e, double tol) {
    PairContext ctx;
    ctx.coreep_a = core_ep_inverse(a, tol).x;
    ctx.coreep_ae = core_ep_inverse(a + e, tol).x;
    ctx.norm_a = spectral_norm(a);
    ctx.norm_e = spectral_norm(e);
    ctx.norm_coreep_a = spectral_norm(ctx.coreep_a);
    ctx.norm_coreep_ae = spectral_norm(ctx.coreep_ae);
    ctx.k_a = index_of(a, tol);
    ctx.k_ae = index_of(a + e, tol);
    return ctx;
}

} // namespace

ConditionProfile classify(const Matrix& a, const Matrix& e, double tol) {
    require_same_square(a, e);
    const double tol_c = tol >= 0.0 ? tol : kDefaultConditionTol;

    const PairContext ctx = make_context(a, e, kAutoTol);
    const Matrix ae = a + e;

    ConditionProfile profile;
    profile.k_a = ctx.k_a;
    profile.k_ae = ctx.k_ae;
    profile.k_max = std::max(ctx.k_a, ctx.k_ae);

    const double case1_left = spectral_norm(e - ctx.coreep_a * a * e);
    const double case1_right = spectral_norm(e - e * a * ctx.coreep_a);
    profile.case1 = case1_left <= tol_c * ctx.norm_e && case1_right <= tol_c * ctx.norm_e;

    const double case2_left = spectral_norm(a * ctx.coreep_a - ae * ctx.coreep_ae);
    const double case2_right = spectral_norm(ctx.coreep_a * a - ctx.coreep_ae * ae);
    profile.case2 = case2_left <= tol_c && case2_right <= tol_c;

    const Eigen::Index rank_a = power_rank(a, profile.k_max);
    const Eigen::Index rank_ae = power_rank(ae, profile.k_max);
    profile.case3 = rank_a == rank_ae;

    profile.residuals = {
        {"E-coreep(A)AE", case1_left},
        {"E-EAcoreep(A)", case1_right},
        {"Acoreep(A)-(A+E)coreep(A+E)", case2_left},
        {"coreep(A)A-coreep(A+E)(A+E)", case2_right},
        {"rank(A^kmax)", static_cast<double>(rank_a)},
        {"rank((A+E)^kmax)", static_cast<double>(rank_ae)},
    };
    return profile;
}

double epsilon_poly(double norm_a, double norm_e, int h) {
    if (h < 1) raise(ErrorKind::PremiseViolated, "epsilon polynomial needs h >= 1");
    double sum = 0.0;
    for (int i = 0; i <= h - 1; ++i) {
        sum += binomial(h, i) * std::pow(norm_a, i) * std::pow(norm_e, h - i);
    }
    return sum;
}

double epsilon_poly(const Matrix& a, const Matrix& e, int h) {
    require_same_square(a, e);
    return epsilon_poly(spectral_norm(a), spectral_norm(e), h);
}

Case1Bounds bound_case1(const Matrix& a, const Matrix& e, double tol) {
    require_same_square(a, e);
    const double tol_c = tol >= 0.0 ? tol : kDefaultConditionTol;
    const PairContext ctx = make_context(a, e, kAutoTol);

    const double x = spectral_norm(ctx.coreep_a * e);
    if (x >= 1.0) {
        raise(ErrorKind::PremiseViolated,
              "||coreep(A) E|| = " + std::to_string(x) + " is not below 1");
    }

    const double case1_left = spectral_norm(e - ctx.coreep_a * a * e);
    const double case1_right = spectral_norm(e - e * a * ctx.coreep_a);
    const bool case1 =
        case1_left <= tol_c * ctx.norm_e && case1_right <= tol_c * ctx.norm_e;

    const double exact = exact_relative_error(a, e, kAutoTol);

    // Closed form (I + coreep(A) E)^-1 coreep(A) against the perturbed inverse.
    const Eigen::Index n = a.rows();
    const Matrix closed_form =
        (Matrix::Identity(n, n) + ctx.coreep_a * e).partialPivLu().solve(ctx.coreep_a);
    const double closed_form_residual = spectral_norm(closed_form - ctx.coreep_ae);

    Case1Bounds bounds;
    bounds.bound_3_2.name = "bound_3_2";
    bounds.bound_3_2.applicable = true;
    bounds.bound_3_2.value = x / (1.0 - x);
    bounds.bound_3_2.exact = exact;
    bounds.bound_3_2.premise_values = {
        {"coreep_a_e_norm", x},
        {"case1_residual_left", case1_left},
        {"case1_residual_right", case1_right},
        {"closed_form_residual", closed_form_residual},
    };
    if (!case1) bounds.bound_3_2.notes.push_back("case-1 equalities fail; bound not guaranteed");

    bounds.bound_3_3.name = "bound_3_3";
    bounds.bound_3_3.notes.push_back(
        "condition-number form evaluated with the relative perturbation ||E||/||A||");
    const double kappa = ctx.norm_a * ctx.norm_coreep_a;
    const double rel = ctx.norm_a > 0.0 ? ctx.norm_e / ctx.norm_a : 0.0;
    bounds.bound_3_3.premise_values = {
        {"kappa", kappa},
        {"kappa_rel_e", kappa * rel},
        {"case1_residual_left", case1_left},
        {"case1_residual_right", case1_right},
    };
    if (ctx.norm_a > 0.0 && kappa * rel < 1.0) {
        bounds.bound_3_3.applicable = true;
        bounds.bound_3_3.value = kappa * rel / (1.0 - kappa * rel);
        bounds.bound_3_3.exact = exact;
    } else {
        bounds.bound_3_3.notes.push_back("condition-number premise fails");
    }
    if (!case1) bounds.bound_3_3.notes.push_back("case-1 equalities fail; bound not guaranteed");
    return bounds;
}

Case2Bounds bound_case2(const Matrix& a, const Matrix& e, double tol) {
    require_same_square(a, e);
    const double tol_c = tol >= 0.0 ? tol : kDefaultConditionTol;
    const PairContext ctx = make_context(a, e, kAutoTol);
    const Matrix ae = a + e;

    const double x = spectral_norm(ctx.coreep_a * e);
    if (x >= 1.0) {
        raise(ErrorKind::PremiseViolated,
              "||coreep(A) E|| = " + std::to_string(x) + " is not below 1");
    }

    const double case2_left = spectral_norm(a * ctx.coreep_a - ae * ctx.coreep_ae);
    const double case2_right = spectral_norm(ctx.coreep_a * a - ctx.coreep_ae * ae);
    const bool case2 = case2_left <= tol_c && case2_right <= tol_c;

    const double exact = exact_relative_error(a, e, kAutoTol);

    Case2Bounds bounds;
    bounds.bound_3_5.name = "bound_3_5";
    bounds.bound_3_5.applicable = true;
    bounds.bound_3_5.value = x / (1.0 - x);
    bounds.bound_3_5.exact = exact;
    bounds.bound_3_5.premise_values = {
        {"coreep_a_e_norm", x},
        {"case2_residual_left", case2_left},
        {"case2_residual_right", case2_right},
        {"norm_bound_3_4", ctx.norm_coreep_a / (1.0 - x)},
        {"perturbed_coreep_norm", ctx.norm_coreep_ae},
    };
    if (!case2) bounds.bound_3_5.notes.push_back("projector equalities fail; bound not guaranteed");

    bounds.bound_3_6.name = "bound_3_6";
    bounds.bound_3_6.notes.push_back(
        "condition-number form evaluated with the relative perturbation ||E||/||A||");
    const double kappa = ctx.norm_a * ctx.norm_coreep_a;
    const double rel = ctx.norm_a > 0.0 ? ctx.norm_e / ctx.norm_a : 0.0;
    bounds.bound_3_6.premise_values = {
        {"kappa", kappa},
        {"kappa_rel_e", kappa * rel},
        {"case2_residual_left", case2_left},
        {"case2_residual_right", case2_right},
    };
    if (ctx.norm_a > 0.0 && kappa * rel < 1.0) {
        bounds.bound_3_6.applicable = true;
        bounds.bound_3_6.value = kappa * rel / (1.0 - kappa * rel);
        bounds.bound_3_6.exact = exact;
    } else {
        bounds.bound_3_6.notes.push_back("condition-number premise fails");
    }
    if (!case2) bounds.bound_3_6.notes.push_back("projector equalities fail; bound not guaranteed");
    return bounds;
}

Case3Bounds bound_case3(const Matrix& a, const Matrix& e, double tol) {
    require_same_square(a, e);
    (void)tol;
    const PairContext ctx = make_context(a, e, kAutoTol);
    const Matrix ae = a + e;
    const int k_max = std::max(ctx.k_a, ctx.k_ae);

    const Eigen::Index rank_a_kmax = power_rank(a, k_max);
    const Eigen::Index rank_ae_kmax = power_rank(ae, k_max);
    if (rank_a_kmax != rank_ae_kmax) {
        raise(ErrorKind::PremiseViolated,
              "rank of the k-th powers changed under the perturbation");
    }

    Case3Bounds bounds;

    // Norm bound, stated at k = ind(A+E).
    {
        const int k = ctx.k_ae;
        const Matrix ak = matrix_power(a, k);
        const Matrix ak1 = ak * a;
        const double pinv_norm =
            spectral_norm(moore_penrose(ak1, power_rank_tolerance(a, k + 1)).x);
        const double eps_k1 = epsilon_poly(ctx.norm_a, ctx.norm_e, k + 1);
        const double eps_k = k >= 1 ? epsilon_poly(ctx.norm_a, ctx.norm_e, k) : 0.0;
        const double series = pinv_norm * eps_k1;

        bounds.bound_3_7.name = "bound_3_7";
        bounds.bound_3_7.premise_values = {
            {"k", static_cast<double>(k)},
            {"pinv_ak1_norm", pinv_norm},
            {"eps_ak1", eps_k1},
            {"eps_ak", eps_k},
            {"series_premise", series},
        };
        if (series >= 1.0) {
            raise(ErrorKind::PremiseViolated,
                  "||(A^{k+1})+|| eps(A^{k+1}) = " + std::to_string(series) +
                      " is not below 1");
        }
        bounds.bound_3_7.applicable = true;
        bounds.bound_3_7.value =
            (spectral_norm(ak) + eps_k) * pinv_norm / (1.0 - series);
        bounds.bound_3_7.exact = ctx.norm_coreep_ae; // the bounded quantity
        bounds.bound_3_7.notes.push_back("bounds the norm of the perturbed core-EP inverse");
    }

    // First-order relative-error bound at k = max of the two indices.
    {
        const int k = k_max;
        const Matrix ak1 = matrix_power(a, k + 1);
        const double pinv_norm =
            spectral_norm(moore_penrose(ak1, power_rank_tolerance(a, k + 1)).x);
        const double eps_k1 = epsilon_poly(ctx.norm_a, ctx.norm_e, k + 1);
        const double series = pinv_norm * eps_k1;

        bounds.bound_3_12.name = "bound_3_12";
        bounds.bound_3_12.premise_values = {
            {"k", static_cast<double>(k)},
            {"series_premise", series},
        };
        if (series >= 1.0) {
            raise(ErrorKind::PremiseViolated,
                  "series premise fails at k = max of the indices");
        }
        if (ctx.norm_a == 0.0) {
            bounds.bound_3_12.notes.push_back("||A|| = 0, leading term undefined");
            return bounds;
        }

        double factor_sum = 0.0;
        for (int i = 0; i <= k - 1; ++i) {
            factor_sum += std::pow(ctx.norm_a, i) * std::pow(ctx.norm_coreep_a, i + 1) *
                          (1.0 + ctx.norm_a * ctx.norm_coreep_a);
        }
        const double c_of_a = (2.0 * factor_sum + ctx.norm_coreep_a) * ctx.norm_a;

        bounds.bound_3_12.applicable = true;
        bounds.bound_3_12.value = c_of_a * ctx.norm_e / ctx.norm_a;
        bounds.bound_3_12.exact = exact_relative_error(a, e, kAutoTol);
        bounds.bound_3_12.premise_values["C(A)"] = c_of_a;
        bounds.bound_3_12.notes.push_back("second-order remainder not quantified");
    }
    return bounds;
}

BoundReport lower_bound_rank_jump(const Matrix& a, const Matrix& e, double tol) {
    require_same_square(a, e);
    const Matrix ae = a + e;
    const int k = std::max(index_of(a, tol), index_of(ae, tol));

    const Eigen::Index rank_a = power_rank(a, k, tol);
    const Eigen::Index rank_ae = power_rank(ae, k, tol);
    if (rank_ae <= rank_a) {
        raise(ErrorKind::NotARankJump,
              "rank at the max index does not rise under the perturbation");
    }

    const double eps_k = epsilon_poly(a, e, k);
    BoundReport report;
    report.name = "lower_3_8";
    report.applicable = true;
    report.value = std::pow(eps_k, -1.0 / static_cast<double>(k));
    report.exact = spectral_norm(core_ep_inverse(ae, tol).x);
    report.premise_values = {
        {"k", static_cast<double>(k)},
        {"rank_a_k", static_cast<double>(rank_a)},
        {"rank_ae_k", static_cast<double>(rank_ae)},
        {"eps_ak", eps_k},
    };
    report.notes.push_back("lower bound on the norm of the perturbed core-EP inverse");
    return report;
}

double exact_relative_error(const Matrix& a, const Matrix& e, double tol) {
    require_same_square(a, e);
    const Matrix coreep_a = core_ep_inverse(a, tol).x;
    const Matrix coreep_ae = core_ep_inverse(a + e, tol).x;
    const double base = spectral_norm(coreep_a);
    const double diff = spectral_norm(coreep_ae - coreep_a);
    if (base == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / base;
}

} // namespace coreep
