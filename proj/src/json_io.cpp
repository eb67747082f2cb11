#include "coreep/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>

namespace coreep {

Json finite_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    return Json(v);
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        raise(ErrorKind::ParseError, "matrix JSON needs rows, cols and data");
    }
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        raise(ErrorKind::ParseError, "rows and cols must be integers");
    }
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 0 || cols < 0) raise(ErrorKind::ParseError, "rows and cols must be nonnegative");

    const Json& data = j["data"];
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
        raise(ErrorKind::ParseError, "data length must equal rows * cols");
    }

    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (const Json& entry : data) {
        double re = 0.0, im = 0.0;
        if (entry.is_number()) {
            re = entry.get<double>();
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                   entry[1].is_number()) {
            re = entry[0].get<double>();
            im = entry[1].get<double>();
        } else {
            raise(ErrorKind::ParseError, "matrix entry must be a number or an [re, im] pair");
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            raise(ErrorKind::ParseError, "matrix entries must be finite");
        }
        m(idx / cols, idx % cols) = Complex(re, im);
        ++idx;
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json data = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::ParseError, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& ex) {
        raise(ErrorKind::ParseError, path + ": " + ex.what());
    }
    return matrix_from_json(j);
}

Json inverse_result_to_json(const InverseResult& r) {
    Json residuals = Json::object();
    for (const auto& [name, value] : r.residuals) residuals[name] = value;
    return Json{{"X", matrix_to_json(r.x)},
                {"residuals", std::move(residuals)},
                {"k", r.k},
                {"tol", r.tol}};
}

Json bound_report_to_json(const BoundReport& r) {
    Json premises = Json::object();
    for (const auto& [name, value] : r.premise_values) premises[name] = finite_or_inf(value);
    return Json{{"name", r.name},
                {"applicable", r.applicable},
                {"premises", std::move(premises)},
                {"value", r.value ? finite_or_inf(*r.value) : Json(nullptr)},
                {"exact", r.exact ? finite_or_inf(*r.exact) : Json(nullptr)},
                {"notes", r.notes}};
}

Json condition_profile_to_json(const ConditionProfile& p) {
    Json residuals = Json::object();
    for (const auto& [name, value] : p.residuals) residuals[name] = value;
    return Json{{"case1", p.case1}, {"case2", p.case2}, {"case3", p.case3},
                {"k_A", p.k_a},     {"k_AE", p.k_ae},   {"k_max", p.k_max},
                {"residuals", std::move(residuals)}};
}

Json continuity_verdict_to_json(const ContinuityVerdict& v) {
    Json per_j = Json::array();
    for (const PerJRecord& rec : v.per_j) {
        per_j.push_back(Json{{"j", rec.j},
                             {"ind_Aj", rec.ind_aj},
                             {"rank_Aj_at_own_index", rec.rank_aj_at_own_index},
                             {"rank_A_at_Aj_index", rec.rank_limit_at_aj_index},
                             {"rank_equal", rec.rank_equal},
                             {"distance", rec.distance}});
    }
    Json pairs = Json::array();
    for (const auto& [ind_a, ind_aj] : v.index_monotonicity) {
        pairs.push_back(Json::array({ind_a, ind_aj}));
    }
    return Json{{"rank_criterion_holds", v.rank_criterion_holds},
                {"predicted_convergent", v.predicted_convergent},
                {"j0", v.j0 ? Json(*v.j0) : Json(nullptr)},
                {"ind_A", v.ind_a},
                {"rank_A_at_index", v.rank_a},
                {"per_j", std::move(per_j)},
                {"empirical_distances", v.empirical_distances},
                {"index_monotonicity", std::move(pairs)}};
}

Json stability_verdict_to_json(const StabilityVerdict& v) {
    return Json{{"is_stable", v.is_stable},
                {"is_semistable", v.is_semistable},
                {"spectral_abscissa_nonzero", finite_or_inf(v.spectral_abscissa_nonzero)},
                {"index", v.index}};
}

QuadratureConfig quadrature_config_from_json(const Json& j) {
    QuadratureConfig cfg;
    if (!j.is_object()) raise(ErrorKind::ParseError, "quadrature config must be an object");
    if (j.contains("t_max") && !(j["t_max"].is_string() && j["t_max"] == "auto")) {
        if (!j["t_max"].is_number()) raise(ErrorKind::ParseError, "t_max must be a number or \"auto\"");
        cfg.t_max = j["t_max"].get<double>();
        if (cfg.t_max <= 0.0) raise(ErrorKind::ParseError, "t_max must be positive");
    }
    if (j.contains("panels") && !(j["panels"].is_string() && j["panels"] == "auto")) {
        if (!j["panels"].is_number_integer()) {
            raise(ErrorKind::ParseError, "panels must be an integer or \"auto\"");
        }
        cfg.panels = j["panels"].get<int>();
        if (cfg.panels < 1) raise(ErrorKind::ParseError, "panels must be at least 1");
    }
    if (j.contains("gl_order")) {
        if (!j["gl_order"].is_number_integer()) {
            raise(ErrorKind::ParseError, "gl_order must be an integer");
        }
        cfg.gl_order = j["gl_order"].get<int>();
        if (cfg.gl_order < 1) raise(ErrorKind::ParseError, "gl_order must be at least 1");
    }
    if (j.contains("target_rel_error")) {
        if (!j["target_rel_error"].is_number()) {
            raise(ErrorKind::ParseError, "target_rel_error must be a number");
        }
        cfg.target_rel_error = j["target_rel_error"].get<double>();
        if (cfg.target_rel_error <= 0.0) {
            raise(ErrorKind::ParseError, "target_rel_error must be positive");
        }
    }
    return cfg;
}

namespace {

// Template matrices admit the literal string "1/j" as an entry; everything
// else follows the plain matrix format.
Matrix instantiate_template(const Json& templ, int j) {
    if (!templ.is_object() || !templ.contains("rows") || !templ.contains("cols") ||
        !templ.contains("data")) {
        raise(ErrorKind::ParseError, "template needs rows, cols and data");
    }
    Json concrete = templ;
    for (Json& entry : concrete["data"]) {
        if (entry.is_string()) {
            if (entry.get<std::string>() != "1/j") {
                raise(ErrorKind::ParseError, "only the symbol \"1/j\" is supported");
            }
            entry = 1.0 / static_cast<double>(j);
        }
    }
    return matrix_from_json(concrete);
}

} // namespace

MatrixSequence sequence_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("limit")) {
        raise(ErrorKind::ParseError, "sequence config needs a limit matrix");
    }
    MatrixSequence seq;
    seq.limit = matrix_from_json(j["limit"]);

    if (j.contains("terms")) {
        auto terms = std::make_shared<std::map<int, Matrix>>();
        for (const Json& term : j["terms"]) {
            if (!term.is_object() || !term.contains("j") || !term.contains("matrix")) {
                raise(ErrorKind::ParseError, "each term needs j and matrix");
            }
            const int idx = term["j"].get<int>();
            if (idx <= 0) raise(ErrorKind::ParseError, "term index must be positive");
            (*terms)[idx] = matrix_from_json(term["matrix"]);
            seq.j_values.push_back(idx);
        }
        std::sort(seq.j_values.begin(), seq.j_values.end());
        seq.generator = [terms](int idx) -> Matrix {
            auto it = terms->find(idx);
            if (it == terms->end()) raise(ErrorKind::ParseError, "no term for requested index");
            return it->second;
        };
    } else if (j.contains("template")) {
        if (j.contains("symbol_value") && j["symbol_value"] != "1/j") {
            raise(ErrorKind::ParseError, "only the symbol \"1/j\" is supported");
        }
        if (!j.contains("j_values") || !j["j_values"].is_array() || j["j_values"].empty()) {
            raise(ErrorKind::ParseError, "template form needs nonempty j_values");
        }
        for (const Json& idx : j["j_values"]) {
            if (!idx.is_number_integer() || idx.get<int>() <= 0) {
                raise(ErrorKind::ParseError, "j_values must be positive integers");
            }
            seq.j_values.push_back(idx.get<int>());
        }
        std::sort(seq.j_values.begin(), seq.j_values.end());
        const Json templ = j["template"];
        seq.generator = [templ](int idx) { return instantiate_template(templ, idx); };
    } else {
        raise(ErrorKind::ParseError, "sequence config needs terms or a template");
    }

    if (seq.j_values.empty()) raise(ErrorKind::ParseError, "sequence has no sample indices");
    return seq;
}

} // namespace coreep
