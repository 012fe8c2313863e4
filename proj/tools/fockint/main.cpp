#include <CLI11.hpp>
#include <iostream>
#include <stdexcept>

#include "commands.hpp"

using fockint::cli::Format;
using fockint::cli::GlobalOptions;

int main(int argc, char** argv) {
    CLI::App app{"Fock-state interference toolkit: generalized two-source "
                 "beam-splitter statistics, parity observables, and CHSH "
                 "optimization over transmission coefficients"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    std::string format_name = "csv";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", global.out_path, "Output file (default stdout)");
    app.add_option("--threads", global.threads, "Worker threads, 0 = auto")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--seed", global.seed, "Seed for randomized stages")
        ->capture_default_str();
    app.add_flag("--stamp", global.stamp,
                 "Record the wall-clock time instead of the fixed epoch timestamp");

    // ghom dist / ghom scan
    auto* ghom = app.add_subcommand("ghom", "Two-detector interference");
    ghom->require_subcommand(1);
    ghom->fallthrough();
    int na = 0, nb = 0, steps = 200;
    double t = 0.5, t_min = 0.0, t_max = 1.0;
    auto* dist = ghom->add_subcommand("dist", "Outcome probability table");
    dist->fallthrough();
    dist->add_option("--na", na, "Source alpha occupation")->required()->check(CLI::NonNegativeNumber);
    dist->add_option("--nb", nb, "Source beta occupation")->required()->check(CLI::NonNegativeNumber);
    dist->add_option("--t", t, "Transmittivity")->required()->check(CLI::Range(0.0, 1.0));
    auto* scan = ghom->add_subcommand("scan", "Parity average versus transmittivity");
    scan->fallthrough();
    scan->add_option("--na", na, "Source alpha occupation")->required()->check(CLI::NonNegativeNumber);
    scan->add_option("--nb", nb, "Source beta occupation")->required()->check(CLI::NonNegativeNumber);
    scan->add_option("--tmin", t_min, "Grid start")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    scan->add_option("--tmax", t_max, "Grid end")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    scan->add_option("--steps", steps, "Grid intervals (rows = steps + 1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // bell surface
    auto* bell = app.add_subcommand("bell", "Four-detector correlator");
    bell->require_subcommand(1);
    bell->fallthrough();
    int n_total = 2, surface_steps = 101;
    auto* surface = bell->add_subcommand("surface", "Correlator over the (T1, T2) plane");
    surface->fallthrough();
    surface->add_option("--n", n_total, "Total particle number (even)")->required();
    surface->add_option("--steps", surface_steps, "Grid points per axis")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();

    // chsh
    auto* chsh = app.add_subcommand("chsh", "CHSH quantity at fixed or optimized settings");
    chsh->fallthrough();
    int chsh_n = 2;
    std::vector<double> settings;
    bool optimize = false;
    std::int64_t budget = 200000;
    chsh->add_option("--n", chsh_n, "Total particle number (even)")->required();
    chsh->add_option("--settings", settings, "T1,T2,T1',T2'")->delimiter(',')->expected(0, 4);
    chsh->add_flag("--optimize", optimize, "Maximize Q over the four settings");
    chsh->add_option("--budget", budget, "Objective evaluation budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // qcurve
    auto* qcurve = app.add_subcommand("qcurve", "Optimized Q for a range of N");
    qcurve->fallthrough();
    int n_min = 2, n_max = 2, n_step = 2;
    bool emit_c = false;
    qcurve->add_option("--nmin", n_min, "First N (even)")->required();
    qcurve->add_option("--nmax", n_max, "Last N (even)")->required();
    qcurve->add_option("--step", n_step, "N increment (even)")->capture_default_str();
    qcurve->add_option("--budget", budget, "Objective evaluation budget per N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    qcurve->add_flag("--emit-c", emit_c, "Add reduced-parameter columns c1, c2");

    // oracle check
    auto* oracle = app.add_subcommand("oracle", "Brute-force expansion checks");
    oracle->require_subcommand(1);
    oracle->fallthrough();
    int max_n = 6;
    auto* check = oracle->add_subcommand("check", "Compare closed forms against the expansion");
    check->fallthrough();
    check->add_option("--max-n", max_n, "Largest occupation to verify (<= 12)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    global.format = format_name == "json" ? Format::kJson : Format::kCsv;

    try {
        if (dist->parsed()) return fockint::cli::cmd_ghom_dist(global, na, nb, t);
        if (scan->parsed())
            return fockint::cli::cmd_ghom_scan(global, na, nb, t_min, t_max, steps);
        if (surface->parsed())
            return fockint::cli::cmd_bell_surface(global, n_total, surface_steps);
        if (chsh->parsed())
            return fockint::cli::cmd_chsh(global, chsh_n, settings, optimize, budget);
        if (qcurve->parsed())
            return fockint::cli::cmd_qcurve(global, n_min, n_max, n_step, budget, emit_c);
        if (check->parsed()) return fockint::cli::cmd_oracle_check(global, max_n);
        std::cerr << "fockint: no command selected\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "fockint: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fockint: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fockint: internal consistency failure: " << e.what() << "\n";
        return 1;
    }
}
