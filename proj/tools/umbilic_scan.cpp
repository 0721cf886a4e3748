// umbilic-scan: sample a spacelike surface on a parameter grid, classify the
// umbilical structure at every point, verify the curvature identities, and
// emit a JSON or CSV report.
//
// Exit codes: 0 all enabled checks pass, 1 check/expectation failure,
// 2 configuration or domain error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "umbilic/report.hpp"

namespace {

void print_catalog() {
    for (const auto& entry : umbilic::catalog()) {
        std::cout << entry.name;
        if (!entry.params_doc.empty()) std::cout << "  [" << entry.params_doc << "]";
        std::cout << "\n";
        for (const auto& s : entry.surfaces) {
            std::cout << "  " << s.name;
            if (!s.params_doc.empty()) std::cout << "  [" << s.params_doc << "]";
            std::cout << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extrinsic geometry and umbilical-type classification of spacelike surfaces"};
    app.require_subcommand(0, 1);

    bool list_catalog = false;
    app.add_flag("--list-catalog", list_catalog, "list catalog spacetimes and surfaces");

    umbilic::RunConfig cfg;
    std::string grid = "16x16";
    std::string mode = "full";
    std::string format = "json";
    double tol_cls = -1.0, tol_ver = -1.0, fd_step = -1.0;

    CLI::App* analyze = app.add_subcommand("analyze", "run the grid pipeline");
    analyze->add_option("--spacetime", cfg.spacetime_spec, "catalog spacetime, name:key=val,...");
    analyze->add_option("--surface", cfg.surface_spec, "catalog surface, name:key=val,...");
    analyze->add_option("--grid", grid, "grid size NxM (cell-centered)");
    analyze->add_option("--mode", mode, "classify | verify | full");
    analyze->add_option("--gauge", cfg.gauge_beta, "constant boost gauge beta");
    analyze->add_option("--tol-cls", tol_cls, "classification threshold override");
    analyze->add_option("--tol-ver", tol_ver, "verification tolerance override");
    analyze->add_option("--fd-step", fd_step, "finite-difference step override");
    analyze->add_option("--out", cfg.out_path, "output path (default stdout)");
    analyze->add_option("--format", format, "json | csv");
    analyze->add_option("--seed", cfg.seed, "seed for the randomized gauge spot checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (list_catalog) {
        print_catalog();
        return 0;
    }
    if (!analyze->parsed()) {
        std::cerr << "error: nothing to do (use `analyze` or --list-catalog)\n";
        return 2;
    }

    try {
        const auto x = grid.find('x');
        if (x == std::string::npos)
            throw umbilic::ConfigError("--grid expects NxM, got '" + grid + "'");
        cfg.grid_u = std::stoi(grid.substr(0, x));
        cfg.grid_v = std::stoi(grid.substr(x + 1));
        if (mode == "classify")
            cfg.mode = umbilic::RunMode::Classify;
        else if (mode == "verify")
            cfg.mode = umbilic::RunMode::Verify;
        else if (mode == "full")
            cfg.mode = umbilic::RunMode::Full;
        else
            throw umbilic::ConfigError("--mode must be classify, verify or full");
        if (format == "json")
            cfg.format = umbilic::OutputFormat::Json;
        else if (format == "csv")
            cfg.format = umbilic::OutputFormat::Csv;
        else
            throw umbilic::ConfigError("--format must be json or csv");
        if (tol_cls > 0.0) cfg.tol_cls = tol_cls;
        if (tol_ver > 0.0) cfg.tol_ver = tol_ver;
        if (fd_step > 0.0) cfg.fd_step = fd_step;

        const umbilic::GridReport rep = umbilic::run(cfg);
        const std::string text = cfg.format == umbilic::OutputFormat::Json
                                     ? umbilic::to_json(rep)
                                     : umbilic::to_csv(rep);
        if (cfg.out_path.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream out(cfg.out_path, std::ios::binary);
            if (!out) throw umbilic::ConfigError("cannot open --out path " + cfg.out_path);
            out << text;
        }
        return umbilic::exit_code(rep);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad numeric argument: " << e.what() << "\n";
        return 2;
    } catch (const umbilic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
