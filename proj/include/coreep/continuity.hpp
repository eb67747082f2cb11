#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coreep/linalg.hpp"

namespace coreep {

struct MatrixSequence {
    std::function<Matrix(int)> generator; // j -> A_j
    Matrix limit;
    std::vector<int> j_values; // sample indices, ascending
};

struct PerJRecord {
    int j = 0;
    int ind_aj = 0;
    Eigen::Index rank_aj_at_own_index = 0;       // rank(A_j^{ind A_j})
    Eigen::Index rank_limit_at_aj_index = 0;     // rank(A^{ind A_j})
    bool rank_equal = false;                     // vs rank(A^{ind A})
    double distance = 0.0;                       // ||coreep(A_j) - coreep(A)||
};

struct ContinuityVerdict {
    bool rank_criterion_holds = false;
    bool predicted_convergent = false; // == rank_criterion_holds
    std::optional<int> j0;             // first sampled j after which equality persists
    int ind_a = 0;
    Eigen::Index rank_a = 0; // rank(A^{ind A})
    std::vector<PerJRecord> per_j;
    std::vector<double> empirical_distances;
    std::vector<std::pair<int, int>> index_monotonicity; // (ind A, ind A_j)
};

/// Rank-equivalence continuity test: equality of rank(A_j^{ind A_j}) with
/// rank(A^{ind A}) over the sampled tail predicts convergence of the core-EP
/// inverses. Also records the empirical distance series.
ContinuityVerdict rank_criterion(const MatrixSequence& seq, double tol = kAutoTol);

/// (ind A, ind A_j) pairs over the sampled indices; meaningful once the
/// empirical distances show convergence.
std::vector<std::pair<int, int>> index_monotonicity_check(const MatrixSequence& seq,
                                                          double tol = kAutoTol);

struct ResidualCertificate {
    bool converges_to_core_ep = false;
    std::vector<std::map<std::string, double>> residual_series; // per X_j
    std::vector<double> residual_max_series;
    std::vector<double> distance_series; // ||X_j - coreep(A)||
};

/// Certificate from the defining-equation residuals: if all three residual
/// series vanish the candidates converge to the core-EP inverse. Both series
/// are reported; the verdict applies the finite-sample decision rule.
ResidualCertificate residual_certificate(const Matrix& a, const std::vector<Matrix>& x_seq,
                                         double tol = 1e-6);

/// Finite-sample decision rule for "this series converges to zero":
/// decreasing trend with final value below tol.
bool empirical_convergence(const std::vector<double>& distances, double tol = 1e-6);

} // namespace coreep
