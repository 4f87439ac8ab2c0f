#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "isoprofile/bodies.hpp"
#include "isoprofile/bounds.hpp"
#include "isoprofile/comparison.hpp"
#include "isoprofile/space_forms.hpp"
#include "isoprofile/verify.hpp"

/// \file
/// Command execution behind the CLI: computes profiles and bounds, runs the
/// comparison reports and the verification suite, and emits CSV or JSON.
/// Exit codes: 0 success, 1 verification failure, 2 invalid configuration.

namespace isoprofile {

enum class Command { model, body, compare, bounds, verify };
enum class OutputFormat { csv, json };

struct RunConfig {
    Command command = Command::model;
    int dim = 2;
    double curvature = 0.0;
    bool half = true;
    std::optional<double> v_max;
    int grid = 512;           // output rows for model/body
    long samples = 1'000'000;  // Monte-Carlo draws
    std::uint64_t seed = 42;
    double tol = 1e-8;
    OutputFormat format = OutputFormat::csv;
    std::optional<Body2D> body;
};

namespace detail {

/// 17 significant digits: lossless round-trip for doubles.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json report_json(const std::string& name, const ComparisonReport& rep) {
    return {{"name", name},
            {"passed", rep.passed},
            {"worst_margin", rep.worst_margin},
            {"worst_location", rep.worst_location},
            {"tolerance", rep.tolerance},
            {"equality_detected", rep.equality_detected},
            {"volume_violation", rep.volume_violation}};
}

inline void report_csv(std::ostream& out, const std::string& name, const ComparisonReport& rep) {
    out << name << ',' << (rep.passed ? 1 : 0) << ',' << g17(rep.worst_margin) << ','
        << g17(rep.worst_location) << ',' << g17(rep.tolerance) << ','
        << (rep.equality_detected ? 1 : 0) << ',' << (rep.volume_violation ? 1 : 0) << '\n';
}

inline const char* command_name(Command c) {
    switch (c) {
        case Command::model: return "model";
        case Command::body: return "body";
        case Command::compare: return "compare";
        case Command::bounds: return "bounds";
        case Command::verify: return "verify";
    }
    return "?";
}

inline const char* body_name(const Body2D& b) {
    switch (b.kind) {
        case Body2D::Kind::half_plane: return "half_plane";
        case Body2D::Kind::unit_square: return "square";
        case Body2D::Kind::disk: return "disk";
        case Body2D::Kind::wedge: return "wedge";
        case Body2D::Kind::slab: return "slab";
    }
    return "?";
}

inline nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json j{{"command", command_name(c.command)},
                     {"dim", c.dim},
                     {"curvature", c.curvature},
                     {"half", c.half},
                     {"grid", c.grid},
                     {"samples", c.samples},
                     {"seed", c.seed},
                     {"tol", c.tol},
                     {"format", c.format == OutputFormat::csv ? "csv" : "json"}};
    if (c.v_max) j["v_max"] = *c.v_max;
    if (c.body) j["body"] = body_name(*c.body);
    return j;
}

inline double default_v_max(const SpaceForm& space) {
    return 10.0 * model_volume_at_radius(space, 1.0);
}

struct ProfileRow {
    double V, I, Y, h;
};

/// Rows for the model command: exact evaluation on a uniform volume grid.
inline std::vector<ProfileRow> model_rows(const RunConfig& cfg) {
    const SpaceForm space(cfg.dim, cfg.curvature, cfg.half);
    const double top = space.bounded() ? *model_total_volume(space)
                                       : cfg.v_max.value_or(default_v_max(space));
    const double norm = top;  // reference volume for the h column
    std::vector<ProfileRow> rows(cfg.grid);
    const int n = cfg.dim - 1;
    for (int i = 0; i < cfg.grid; ++i) {
        const double V = top * double(i) / (cfg.grid - 1);
        const bool closing = space.bounded() && i == cfg.grid - 1;
        const double I = closing ? 0.0 : model_profile_at(space, V);
        rows[i] = {V, I, std::pow(I, double(n + 1) / n), I / norm};
    }
    return rows;
}

/// Rows for the body command: analytic candidate-family profile.
inline std::vector<ProfileRow> body_rows(const RunConfig& cfg) {
    const Body2D& body = *cfg.body;
    const double A = body.area();
    const double top = std::isfinite(A) ? A : cfg.v_max.value_or(3.0);
    std::vector<ProfileRow> rows(cfg.grid);
    for (int i = 0; i < cfg.grid; ++i) {
        const double V = top * double(i) / (cfg.grid - 1);
        const double I = body_profile(body, V);
        rows[i] = {V, I, I * I, I / top};
    }
    return rows;
}

inline void emit_rows(const RunConfig& cfg, const std::vector<ProfileRow>& rows,
                      std::ostream& out) {
    if (cfg.format == OutputFormat::csv) {
        out << "V,I,Y,h\n";
        for (const ProfileRow& r : rows)
            out << g17(r.V) << ',' << g17(r.I) << ',' << g17(r.Y) << ',' << g17(r.h) << '\n';
        return;
    }
    nlohmann::json rows_json = nlohmann::json::array();
    for (const ProfileRow& r : rows) rows_json.push_back({r.V, r.I, r.Y, r.h});
    const nlohmann::json doc{{"config", config_json(cfg)},
                             {"results", {{"columns", {"V", "I", "Y", "h"}}, {"rows", rows_json}}},
                             {"reports", nlohmann::json::array()}};
    out << doc.dump(2) << '\n';
}

}  // namespace detail

/// Execute one command; data goes to `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.grid < 2 || cfg.samples < 1000 || !(cfg.tol > 0) || cfg.dim < 2) {
            err << "isoprofile: invalid configuration (need grid >= 2, samples >= 1000, "
                   "tol > 0, dim >= 2)\n";
            return 2;
        }

        switch (cfg.command) {
            case Command::model:
                detail::emit_rows(cfg, detail::model_rows(cfg), out);
                return 0;

            case Command::body: {
                if (!cfg.body) {
                    err << "isoprofile: the body command requires --body\n";
                    return 2;
                }
                detail::emit_rows(cfg, detail::body_rows(cfg), out);
                return 0;
            }

            case Command::compare: {
                const int curve_grid = std::max(257, cfg.grid | 1);
                std::vector<std::pair<std::string, ComparisonReport>> reports;
                if (cfg.body) {
                    // Flat body against the half model of the given curvature.
                    const ProfileCurve curve =
                        body_profile_curve(*cfg.body, cfg.v_max.value_or(3.0), curve_grid);
                    reports.emplace_back("upper_bound_vs_half_model",
                                         compare_upper(curve, 1, cfg.curvature, cfg.tol));
                } else {
                    // Model self-comparison (equality catalogue).
                    const SpaceForm space(cfg.dim, cfg.curvature, cfg.half);
                    std::optional<double> v_max = cfg.v_max;
                    if (!space.bounded() && !v_max) v_max = detail::default_v_max(space);
                    const ProfileCurve curve = model_profile(space, v_max, curve_grid);
                    reports.emplace_back(
                        "upper_bound_vs_half_model",
                        compare_upper(curve, cfg.dim - 1, cfg.curvature, cfg.tol, cfg.half));
                    if (cfg.curvature > 0.0 && cfg.half) {
                        const NormalizedProfile h = normalize(curve);
                        reports.emplace_back("levy_gromov_lower",
                                             compare_lower_LG(h, cfg.dim - 1, cfg.curvature,
                                                              cfg.tol));
                        const double cheeger = cheeger_constant(h, true);
                        reports.emplace_back(
                            "levy_gromov_refined",
                            refined_LG(h, cfg.dim - 1, cfg.curvature, cheeger, cfg.tol));
                    }
                }
                if (cfg.format == OutputFormat::csv) {
                    out << "report,passed,worst_margin,worst_location,tolerance,"
                           "equality_detected,volume_violation\n";
                    for (const auto& [name, rep] : reports) detail::report_csv(out, name, rep);
                } else {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& [name, rep] : reports)
                        arr.push_back(detail::report_json(name, rep));
                    const nlohmann::json doc{{"config", detail::config_json(cfg)},
                                             {"results", nlohmann::json::object()},
                                             {"reports", arr}};
                    out << doc.dump(2) << '\n';
                }
                return 0;
            }

            case Command::bounds: {
                const int curve_grid = std::max(1025, cfg.grid | 1);
                ProfileCurve curve;
                int n = cfg.dim - 1;
                if (cfg.body) {
                    if (!std::isfinite(cfg.body->area())) {
                        err << "isoprofile: bounds requires a bounded body\n";
                        return 2;
                    }
                    curve = body_profile_curve(*cfg.body, 0.0, curve_grid);
                    n = 1;
                } else {
                    if (!(cfg.curvature > 0.0)) {
                        err << "isoprofile: model bounds require curvature > 0 "
                               "(or pass --body for a flat body)\n";
                        return 2;
                    }
                    curve = model_profile(SpaceForm(cfg.dim, cfg.curvature, true), std::nullopt,
                                          curve_grid);
                }
                const NormalizedProfile h = normalize(curve);
                const BoundsSummary s = summarize_bounds(curve, h, n, cfg.curvature, true);
                if (cfg.format == OutputFormat::csv) {
                    out << "key,value\n";
                    out << "cheeger," << detail::g17(s.cheeger) << '\n';
                    out << "diameter_upper," << detail::g17(s.diameter_upper) << '\n';
                    if (s.myers_upper) out << "myers_upper," << detail::g17(*s.myers_upper) << '\n';
                    out << "volume," << detail::g17(s.volume) << '\n';
                    if (s.volume_model)
                        out << "volume_model," << detail::g17(*s.volume_model) << '\n';
                    out << "eigenvalue_lower," << detail::g17(s.eigenvalue_lower) << '\n';
                    out << "refined_eigenvalue_lower," << detail::g17(s.refined_eigenvalue_lower)
                        << '\n';
                } else {
                    nlohmann::json results{{"cheeger", s.cheeger},
                                           {"diameter_upper", s.diameter_upper},
                                           {"volume", s.volume},
                                           {"eigenvalue_lower", s.eigenvalue_lower},
                                           {"refined_eigenvalue_lower",
                                            s.refined_eigenvalue_lower}};
                    if (s.myers_upper) results["myers_upper"] = *s.myers_upper;
                    if (s.volume_model) results["volume_model"] = *s.volume_model;
                    const nlohmann::json doc{{"config", detail::config_json(cfg)},
                                             {"results", results},
                                             {"reports", nlohmann::json::array()}};
                    out << doc.dump(2) << '\n';
                }
                return 0;
            }

            case Command::verify: {
                const std::vector<CheckOutcome> outcomes =
                    run_verification(cfg.samples, cfg.seed);
                bool all = true;
                for (const CheckOutcome& c : outcomes) {
                    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " ("
                        << c.detail << ")\n";
                    all = all && c.passed;
                }
                out << (all ? "verification: all checks passed\n"
                            : "verification: FAILURES present\n");
                return all ? 0 : 1;
            }
        }
        err << "isoprofile: unknown command\n";
        return 2;
    } catch (const std::exception& e) {
        err << "isoprofile: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace isoprofile
