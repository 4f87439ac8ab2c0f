#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isoprofile/run.hpp"

using namespace isoprofile;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg, bool& half_model, bool& seed_given) {
    cmd->add_option("--dim", cfg.dim, "ambient dimension d = n+1")->check(CLI::Range(2, 16));
    cmd->add_option("--curvature,-k", cfg.curvature, "sectional curvature delta");
    cmd->add_flag("--half,!--full", half_model,
                  "half model with totally geodesic boundary (default) vs. full space form");
    cmd->add_option("--vmax", cfg.v_max, "volume cutoff for unbounded regions");
    cmd->add_option("--grid", cfg.grid, "number of output rows / sample grid");
    cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
    cmd->add_option("--seed", cfg.seed, "random seed")->each([&seed_given](const std::string&) {
        seed_given = true;
    });
    cmd->add_option("--tol", cfg.tol, "comparison tolerance");
    cmd->add_option(
        "--format",
        [&cfg](const std::vector<std::string>& v) {
            if (v.empty()) return false;
            if (v[0] == "csv")
                cfg.format = OutputFormat::csv;
            else if (v[0] == "json")
                cfg.format = OutputFormat::json;
            else
                return false;
            return true;
        },
        "output format: csv or json");
}

void add_body_options(CLI::App* cmd, std::string& body_name, double& radius, double& angle,
                      double& width) {
    cmd->add_option("--body", body_name, "flat body: half_plane, square, disk, wedge, slab");
    cmd->add_option("--radius", radius, "disk radius");
    cmd->add_option("--angle", angle, "wedge angle in (0, pi]");
    cmd->add_option("--width", width, "slab width");
}

std::optional<Body2D> make_body(const std::string& name, double radius, double angle,
                                double width) {
    if (name.empty()) return std::nullopt;
    if (name == "half_plane") return Body2D::half_plane();
    if (name == "square") return Body2D::unit_square();
    if (name == "disk") return Body2D::disk(radius);
    if (name == "wedge") return Body2D::wedge(angle);
    if (name == "slab") return Body2D::slab(width);
    throw std::invalid_argument("unknown body '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isoperimetric profiles of model spaces and flat convex bodies"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool half_model = true;
    bool seed_given = false;
    std::string body_name;
    double radius = 1.0, angle = pi / 2, width = 1.0;

    CLI::App* model = app.add_subcommand("model", "emit a model-space profile (V, I, Y, h)");
    CLI::App* body = app.add_subcommand("body", "emit a flat convex body profile");
    CLI::App* compare = app.add_subcommand("compare", "run profile comparison reports");
    CLI::App* bounds = app.add_subcommand("bounds", "derived geometric bounds");
    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    for (CLI::App* cmd : {model, body, compare, bounds, verify})
        add_common(cmd, cfg, half_model, seed_given);
    for (CLI::App* cmd : {body, compare, bounds})
        add_body_options(cmd, body_name, radius, angle, width);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // ISOPROFILE_SEED overrides the default; an explicit --seed flag wins.
    if (!seed_given) {
        if (const char* env = std::getenv("ISOPROFILE_SEED"))
            cfg.seed = std::strtoull(env, nullptr, 10);
    }
    cfg.half = half_model;

    if (model->parsed()) cfg.command = Command::model;
    if (body->parsed()) cfg.command = Command::body;
    if (compare->parsed()) cfg.command = Command::compare;
    if (bounds->parsed()) cfg.command = Command::bounds;
    if (verify->parsed()) cfg.command = Command::verify;

    try {
        cfg.body = make_body(body_name, radius, angle, width);
    } catch (const std::exception& e) {
        std::cerr << "isoprofile: " << e.what() << '\n';
        return 2;
    }

    return run(cfg, std::cout, std::cerr);
}
