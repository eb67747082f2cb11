#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "coreep/continuity.hpp"
#include "coreep/geninv.hpp"
#include "coreep/json_io.hpp"
#include "coreep/perturbation.hpp"
#include "coreep/semistable.hpp"

namespace {

using coreep::Json;

int exit_code_for(coreep::ErrorKind kind) {
    using coreep::ErrorKind;
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::ShapeMismatch:
            return 2;
        case ErrorKind::IndexTooLarge:
            return 3;
        case ErrorKind::NotSemistable:
        case ErrorKind::Case1Violated:
        case ErrorKind::PerturbedCoreUnstable:
            return 5;
        default:
            return 4;
    }
}

Json tol_echo(double tol) {
    return tol >= 0.0 ? Json(tol) : Json("auto");
}

// Table display convention: round to four decimals first, then print fixed if
// the rounded value reaches 1e-3 and scientific otherwise.
std::string table_display(double v) {
    char buf[64];
    const double rounded = std::round(v * 1e4) / 1e4;
    if (std::abs(rounded) >= 1e-3) {
        std::snprintf(buf, sizeof(buf), "%.4f", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%.4e", v);
    }
    return buf;
}

std::string raw_display(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Options {
    double tol = coreep::kAutoTol;
    std::string out;
    std::string format; // empty = per-command default
};

void emit(const std::string& text, const Options& opt) {
    if (opt.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream file(opt.out);
        if (!file) coreep::raise(coreep::ErrorKind::ParseError, "cannot write " + opt.out);
        file << text << "\n";
    }
}

void emit_report(const std::string& command, Json inputs, Json outputs,
                 std::vector<std::string> diagnostics, int exit_code, const Options& opt) {
    Json report{{"command", command},
                {"inputs", std::move(inputs)},
                {"outputs", std::move(outputs)},
                {"diagnostics", std::move(diagnostics)},
                {"exit_code", exit_code}};
    emit(report.dump(2), opt);
}

int run_inverse(const std::string& kind, const std::string& file, const Options& opt) {
    const coreep::Matrix a = coreep::load_matrix(file);
    Json inputs{{"kind", kind}, {"file", file}, {"tol", tol_echo(opt.tol)},
                {"matrix", coreep::matrix_to_json(a)}};

    coreep::InverseResult result;
    if (kind == "pinv") {
        result = coreep::moore_penrose(a, opt.tol);
    } else if (kind == "drazin") {
        result = coreep::drazin_inverse(a, opt.tol);
    } else if (kind == "core") {
        result = coreep::core_inverse(a, opt.tol);
    } else if (kind == "coreep") {
        result = coreep::core_ep_inverse(a, opt.tol);
    } else {
        coreep::raise(coreep::ErrorKind::ParseError,
                      "unknown inverse kind " + kind + " (pinv|drazin|core|coreep)");
    }

    emit_report("inverse", std::move(inputs), coreep::inverse_result_to_json(result), {}, 0, opt);
    return 0;
}

Json inapplicable_report(const std::string& name, const std::string& why) {
    coreep::BoundReport report;
    report.name = name;
    report.applicable = false;
    report.notes.push_back(why);
    return coreep::bound_report_to_json(report);
}

int run_perturb(const std::string& a_file, const std::string& e_file, const Options& opt) {
    const coreep::Matrix a = coreep::load_matrix(a_file);
    const coreep::Matrix e = coreep::load_matrix(e_file);
    Json inputs{{"a_file", a_file}, {"e_file", e_file}, {"tol", tol_echo(opt.tol)},
                {"A", coreep::matrix_to_json(a)}, {"E", coreep::matrix_to_json(e)}};

    std::vector<std::string> diagnostics;
    const coreep::ConditionProfile profile = coreep::classify(a, e, opt.tol);

    Json bounds = Json::array();
    const auto collect = [&](const std::vector<std::string>& names, auto&& producer) {
        try {
            producer();
        } catch (const coreep::Error& err) {
            if (err.kind() != coreep::ErrorKind::PremiseViolated &&
                err.kind() != coreep::ErrorKind::NotARankJump) {
                throw;
            }
            for (const std::string& name : names) {
                bounds.push_back(inapplicable_report(name, err.what()));
            }
            diagnostics.push_back(names.front() + ": " + err.what());
        }
    };

    collect({"bound_3_2", "bound_3_3"}, [&] {
        const coreep::Case1Bounds b = coreep::bound_case1(a, e, opt.tol);
        bounds.push_back(coreep::bound_report_to_json(b.bound_3_2));
        bounds.push_back(coreep::bound_report_to_json(b.bound_3_3));
    });
    collect({"bound_3_5", "bound_3_6"}, [&] {
        const coreep::Case2Bounds b = coreep::bound_case2(a, e, opt.tol);
        bounds.push_back(coreep::bound_report_to_json(b.bound_3_5));
        bounds.push_back(coreep::bound_report_to_json(b.bound_3_6));
    });
    collect({"bound_3_7", "bound_3_12"}, [&] {
        const coreep::Case3Bounds b = coreep::bound_case3(a, e, opt.tol);
        bounds.push_back(coreep::bound_report_to_json(b.bound_3_7));
        bounds.push_back(coreep::bound_report_to_json(b.bound_3_12));
    });
    collect({"lower_3_8"}, [&] {
        bounds.push_back(coreep::bound_report_to_json(coreep::lower_bound_rank_jump(a, e)));
    });

    Json outputs{{"profile", coreep::condition_profile_to_json(profile)},
                 {"bounds", std::move(bounds)},
                 {"exact_relative_error",
                  coreep::finite_or_inf(coreep::exact_relative_error(a, e, opt.tol))}};
    emit_report("perturb", std::move(inputs), std::move(outputs), std::move(diagnostics), 0, opt);
    return 0;
}

int run_table1(const Options& opt) {
    const std::vector<double> epsilons{0.1, 0.01, 0.001, 0.0001};

    coreep::Matrix a = coreep::Matrix::Zero(3, 3);
    a(0, 0) = 1.0;

    std::vector<double> exact_row, b35_row, b312_row;
    for (double eps : epsilons) {
        coreep::Matrix e = coreep::Matrix::Zero(3, 3);
        e(0, 0) = eps;
        e(0, 1) = eps;
        exact_row.push_back(coreep::exact_relative_error(a, e));
        b35_row.push_back(*coreep::bound_case2(a, e).bound_3_5.value);
        b312_row.push_back(*coreep::bound_case3(a, e).bound_3_12.value);
    }

    const auto csv = [&] {
        std::string text = "bound,eps=0.1,eps=0.01,eps=0.001,eps=0.0001";
        const auto append_row = [&text](const std::string& label, const std::vector<double>& row,
                                        bool raw) {
            text += "\n" + label;
            for (double v : row) text += "," + (raw ? raw_display(v) : table_display(v));
        };
        append_row("Exact", exact_row, false);
        append_row("(3.5)", b35_row, false);
        append_row("(3.12)", b312_row, false);
        append_row("Exact_raw", exact_row, true);
        append_row("(3.5)_raw", b35_row, true);
        append_row("(3.12)_raw", b312_row, true);
        return text;
    }();

    if (opt.format == "json") {
        const auto row_json = [](const std::vector<double>& row) {
            Json display = Json::array();
            for (double v : row) display.push_back(table_display(v));
            return Json{{"display", std::move(display)}, {"raw", row}};
        };
        Json outputs{{"epsilons", epsilons},
                     {"rows", Json{{"Exact", row_json(exact_row)},
                                   {"(3.5)", row_json(b35_row)},
                                   {"(3.12)", row_json(b312_row)}}},
                     {"csv", csv}};
        emit_report("table1", Json::object(), std::move(outputs), {}, 0, opt);
    } else {
        emit(csv, opt);
    }
    return 0;
}

int run_continuity(const std::string& config_file, const Options& opt) {
    std::ifstream in(config_file);
    if (!in) coreep::raise(coreep::ErrorKind::ParseError, "cannot open " + config_file);
    Json config;
    try {
        in >> config;
    } catch (const Json::exception& ex) {
        coreep::raise(coreep::ErrorKind::ParseError, config_file + ": " + ex.what());
    }

    const coreep::MatrixSequence seq = coreep::sequence_from_json(config);
    const coreep::ContinuityVerdict verdict = coreep::rank_criterion(seq, opt.tol);

    Json inputs{{"config_file", config_file}, {"tol", tol_echo(opt.tol)},
                {"j_values", seq.j_values}};
    emit_report("continuity", std::move(inputs), coreep::continuity_verdict_to_json(verdict),
                {}, 0, opt);
    return 0;
}

int run_semistable(const std::string& a_file, const std::string& e_file,
                   const std::string& quad_file, const Options& opt) {
    const coreep::Matrix a = coreep::load_matrix(a_file);
    const coreep::Matrix e =
        e_file.empty() ? coreep::Matrix::Zero(a.rows(), a.cols()).eval()
                       : coreep::load_matrix(e_file);

    coreep::QuadratureConfig cfg;
    if (!quad_file.empty()) {
        std::ifstream in(quad_file);
        if (!in) coreep::raise(coreep::ErrorKind::ParseError, "cannot open " + quad_file);
        Json quad;
        try {
            in >> quad;
        } catch (const Json::exception& ex) {
            coreep::raise(coreep::ErrorKind::ParseError, quad_file + ": " + ex.what());
        }
        cfg = coreep::quadrature_config_from_json(quad);
    }

    Json inputs{{"a_file", a_file},
                {"e_file", e_file.empty() ? Json(nullptr) : Json(e_file)},
                {"quad_file", quad_file.empty() ? Json(nullptr) : Json(quad_file)},
                {"tol", tol_echo(opt.tol)},
                {"A", coreep::matrix_to_json(a)},
                {"E", coreep::matrix_to_json(e)}};

    std::vector<std::string> diagnostics;
    if (e_file.empty()) diagnostics.push_back("no perturbation file given; using E = 0");

    const coreep::StabilityVerdict verdict = coreep::classify_stability(a, opt.tol);
    const coreep::IntegralResult integral =
        coreep::integral_core_ep_perturbed(a, e, cfg, opt.tol);
    const coreep::Matrix reference = coreep::core_ep_inverse(a + e, opt.tol).x;
    const double distance = coreep::spectral_norm(integral.value - reference);

    Json outputs{{"stability", coreep::stability_verdict_to_json(verdict)},
                 {"integral", coreep::matrix_to_json(integral.value)},
                 {"cross_check_distance", distance},
                 {"quadrature", Json{{"t_max", integral.t_max},
                                     {"panels", integral.panels},
                                     {"tail_estimate", integral.tail_estimate}}}};
    emit_report("semistable", std::move(inputs), std::move(outputs), std::move(diagnostics), 0,
                opt);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"core-EP inverse toolkit: generalized inverses, perturbation bounds,\n"
                 "continuity diagnostics and the semistable integral representation"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol", opt.tol, "override the automatic tolerance");
    app.add_option("--out", opt.out, "write the report to this path instead of stdout");
    app.add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string inv_kind, inv_file;
    CLI::App* inverse = app.add_subcommand("inverse", "compute a generalized inverse");
    inverse->add_option("kind", inv_kind, "pinv | drazin | core | coreep")->required();
    inverse->add_option("input", inv_file, "matrix JSON file")->required();

    std::string perturb_a, perturb_e;
    CLI::App* perturb = app.add_subcommand("perturb", "condition profile and all bounds");
    perturb->add_option("a", perturb_a, "base matrix JSON file")->required();
    perturb->add_option("e", perturb_e, "perturbation matrix JSON file")->required();

    CLI::App* table1 = app.add_subcommand("table1", "reproduce the bound-comparison table");

    std::string continuity_config;
    CLI::App* continuity = app.add_subcommand("continuity", "rank-criterion experiment");
    continuity->add_option("config", continuity_config, "sequence config JSON file")->required();

    std::string semi_a, semi_e, semi_quad;
    CLI::App* semistable =
        app.add_subcommand("semistable", "integral representation of the perturbed inverse");
    semistable->add_option("a", semi_a, "semistable matrix JSON file")->required();
    semistable->add_option("e", semi_e, "case-1 perturbation JSON file");
    semistable->add_option("--quad", semi_quad, "quadrature config JSON file");

    for (CLI::App* sub : {inverse, perturb, table1, continuity, semistable}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (inverse->parsed()) return run_inverse(inv_kind, inv_file, opt);
        if (perturb->parsed()) return run_perturb(perturb_a, perturb_e, opt);
        if (table1->parsed()) return run_table1(opt);
        if (continuity->parsed()) return run_continuity(continuity_config, opt);
        if (semistable->parsed()) return run_semistable(semi_a, semi_e, semi_quad, opt);
    } catch (const coreep::Error& err) {
        const int code = exit_code_for(err.kind());
        std::cerr << err.what() << "\n";
        emit_report(command, Json::object(), Json::object(), {err.what()}, code, opt);
        return code;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
