#include "coreep/continuity.hpp"

#include <algorithm>
#include <cmath>

#include "coreep/geninv.hpp"

namespace coreep {

namespace {

void require_sequence(const MatrixSequence& seq) {
    if (!seq.generator) raise(ErrorKind::ParseError, "sequence has no generator");
    if (seq.j_values.empty()) raise(ErrorKind::ParseError, "sequence has no sample indices");
    if (seq.limit.rows() != seq.limit.cols()) {
        raise(ErrorKind::ShapeMismatch, "sequence limit must be square");
    }
}

} // namespace

bool empirical_convergence(const std::vector<double>& distances, double tol) {
    if (distances.empty()) return false;
    const double final = distances.back();
    return final < tol && final <= distances.front();
}

ContinuityVerdict rank_criterion(const MatrixSequence& seq, double tol) {
    require_sequence(seq);

    ContinuityVerdict verdict;
    verdict.ind_a = index_of(seq.limit, tol);
    verdict.rank_a = power_rank(seq.limit, verdict.ind_a, tol);

    const Matrix coreep_limit = core_ep_inverse(seq.limit, tol).x;

    for (int j : seq.j_values) {
        Matrix term = seq.generator(j);
        if (term.rows() != seq.limit.rows() || term.cols() != seq.limit.cols()) {
            raise(ErrorKind::ShapeMismatch, "sequence term shape differs from the limit");
        }
        PerJRecord rec;
        rec.j = j;
        rec.ind_aj = index_of(term, tol);
        rec.rank_aj_at_own_index = power_rank(term, rec.ind_aj, tol);
        rec.rank_limit_at_aj_index = power_rank(seq.limit, rec.ind_aj, tol);
        rec.rank_equal = rec.rank_aj_at_own_index == verdict.rank_a;
        rec.distance = spectral_norm(core_ep_inverse(term, tol).x - coreep_limit);
        verdict.per_j.push_back(rec);
        verdict.empirical_distances.push_back(rec.distance);
        verdict.index_monotonicity.emplace_back(verdict.ind_a, rec.ind_aj);
    }

    // j0: first sampled index from which the rank equality holds for the rest
    // of the sample.
    std::optional<size_t> stable_from;
    for (size_t i = verdict.per_j.size(); i-- > 0;) {
        if (!verdict.per_j[i].rank_equal) break;
        stable_from = i;
    }
    if (stable_from) {
        verdict.j0 = verdict.per_j[*stable_from].j;
        verdict.rank_criterion_holds = true;
    }
    verdict.predicted_convergent = verdict.rank_criterion_holds;
    return verdict;
}

std::vector<std::pair<int, int>> index_monotonicity_check(const MatrixSequence& seq, double tol) {
    require_sequence(seq);
    const int ind_a = index_of(seq.limit, tol);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(seq.j_values.size());
    for (int j : seq.j_values) {
        pairs.emplace_back(ind_a, index_of(seq.generator(j), tol));
    }
    return pairs;
}

ResidualCertificate residual_certificate(const Matrix& a, const std::vector<Matrix>& x_seq,
                                         double tol) {
    if (a.rows() != a.cols()) raise(ErrorKind::ShapeMismatch, "A must be square");
    if (x_seq.empty()) raise(ErrorKind::ParseError, "no candidate matrices supplied");

    const InverseResult cep = core_ep_inverse(a);
    const double distance_tol = tol * (1.0 + spectral_norm(cep.x));

    ResidualCertificate cert;
    for (const Matrix& x : x_seq) {
        auto residuals = verify_core_ep(a, x);
        double max_residual = 0.0;
        for (const auto& [name, value] : residuals) max_residual = std::max(max_residual, value);
        cert.residual_series.push_back(std::move(residuals));
        cert.residual_max_series.push_back(max_residual);
        cert.distance_series.push_back(spectral_norm(x - cep.x));
    }

    cert.converges_to_core_ep = empirical_convergence(cert.residual_max_series, tol) &&
                                empirical_convergence(cert.distance_series, distance_tol);
    return cert;
}

} // namespace coreep
