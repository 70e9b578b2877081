// engine — command-line front end for the forced-mechanics library
//
// Subcommands:
//   simulate <file>      integrate a scenario and write a trajectory CSV
//   invert <file>        recover the force schedule for a desired path
//   check <suite>        run built-in identity suites (identities | variational | all)
//   aircraft [--steady]  run the bundled aircraft scenario
//
// Exit codes: 0 success, 2 configuration errors (the message names the
// offending field), 3 runtime numeric errors (the message carries the
// simulation time at failure; a failing check row also exits 3).
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <fmech/aircraft_scenarios.hpp>
#include <fmech/bundle.hpp>
#include <fmech/corpus.hpp>
#include <fmech/errors.hpp>
#include <fmech/hamiltonian.hpp>
#include <fmech/integrate.hpp>
#include <fmech/io.hpp>
#include <fmech/lagrangian.hpp>
#include <fmech/scenario.hpp>
#include <fmech/system.hpp>
#include <fmech/varcheck.hpp>

namespace {

using namespace fmech;

// ── helpers ─────────────────────────────────────────────────────────────────

std::string join_numbers(const Vec &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ' ';
        out += format_number(values[i]);
    }
    return out;
}

/// Place the scenario's output file: ENGINE_OUT_DIR overrides the directory,
/// keeping only the file name; otherwise the path is used as written.
std::string resolve_output(const std::string &name) {
    namespace fs = std::filesystem;
    fs::path path(name);
    std::error_code ec;
    if (const char *dir = std::getenv("ENGINE_OUT_DIR")) {
        const fs::path base(dir);
        fs::create_directories(base, ec);
        path = base / path.filename();
    } else if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
    }
    return path.string();
}

/// Integrate the scenario in its requested picture, converting the initial
/// condition through the Legendre map when it was given in the other one.
Trajectory run_trajectory(const Scenario &sc) {
    const auto &sim = sc.simulation;
    if (sim.picture == "lagrangian") {
        TangentVector init{sc.x0, {}};
        if (sc.v0)
            init.v = *sc.v0;
        else
            init = legendre_invert(sc.system, Covector{sc.x0, *sc.p0});
        return simulate_lagrangian(sc.system, sc.forces, init, sim.t0, sim.t1,
                                   sim.dt);
    }
    Covector init{sc.x0, {}};
    if (sc.p0)
        init.p = *sc.p0;
    else
        init = legendre(sc.system, TangentVector{sc.x0, *sc.v0});
    return simulate_hamiltonian(sc.system, sc.forces, init, sim.t0, sim.t1,
                                sim.dt);
}

// ── simulate / invert / aircraft ────────────────────────────────────────────

int cmd_simulate(const Scenario &sc) {
    const Trajectory traj = run_trajectory(sc);
    const auto [eta_a, eta_b] = boundary_momenta(sc.system, traj);
    const std::size_t last = traj.samples() - 1;
    const Vec xb = traj.x_row(last), vb = traj.v_row(last),
              pb = traj.p_row(last);
    const double H_b = dot(pb, vb) - eval(sc.system.L, sc.system.at(xb, vb));

    std::cout << "eta(a) = " << join_numbers(eta_a.p) << "\n";
    std::cout << "eta(b) = " << join_numbers(eta_b.p) << "\n";
    std::cout << "H(b) = " << format_number(H_b) << "\n";

    const std::string path = resolve_output(sc.output_path);
    write_text_file(path, trajectory_csv(sc.system, traj));
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_invert(const Scenario &sc) {
    if (!sc.desired)
        throw config_error("desired.path",
                           "invert requires a desired path section");
    const auto &sim = sc.simulation;
    const Trajectory traj =
        inverse_dynamics(sc.system, *sc.desired, sim.t0, sim.t1, sim.dt);
    const std::size_t last = traj.samples() - 1;

    std::cout << "zeta(a) = " << join_numbers(traj.f_row(0)) << "\n";
    std::cout << "zeta(b) = " << join_numbers(traj.f_row(last)) << "\n";

    const std::string path = resolve_output(sc.output_path);
    write_text_file(path, force_csv(traj));
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_aircraft(bool steady) {
    return cmd_simulate(load_scenario(steady ? kAircraftSteadyScenario
                                             : kAircraftFreeScenario));
}

// ── check: canonical-map identity suite ─────────────────────────────────────

struct CheckReport {
    bool all_pass = true;

    void row(const std::string &name, double residual, double tolerance) {
        const bool pass = residual <= tolerance;
        all_pass = all_pass && pass;
        std::printf("  %-36s %12.3e   %s\n", name.c_str(), residual,
                    pass ? "PASS" : "FAIL");
    }
};

Vec random_vec(std::mt19937 &rng, std::size_t m) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    Vec r(m);
    for (double &c : r)
        c = dist(rng);
    return r;
}

double max_abs_diff(const Vec &a, const Vec &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double max_abs(const Vec &a) {
    double worst = 0.0;
    for (double c : a)
        worst = std::max(worst, std::abs(c));
    return worst;
}

bool run_identity_checks() {
    std::mt19937 rng(9221u);
    constexpr std::size_t m = 3;
    constexpr int trials = 1000;
    CheckReport report;
    std::printf("canonical-map identities (%d trials each)\n", trials);

    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const TTPoint w{random_vec(rng, m), random_vec(rng, m),
                        random_vec(rng, m), random_vec(rng, m)};
        const TTPoint back = kappa11(kappa11(w));
        worst = std::max({worst, max_abs_diff(back.x, w.x),
                          max_abs_diff(back.v, w.v), max_abs_diff(back.dx, w.dx),
                          max_abs_diff(back.dv, w.dv)});
    }
    report.row("kappa involution", worst, 1e-15);

    worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const TT2Point u{random_vec(rng, m), random_vec(rng, m),
                         random_vec(rng, m), random_vec(rng, m),
                         random_vec(rng, m), random_vec(rng, m)};
        const TT2Point twice = F21(F21(u));
        const TT2Point f22 = F22(u);
        worst = std::max({worst, max_abs_diff(twice.x, f22.x),
                          max_abs_diff(twice.v, f22.v),
                          max_abs_diff(twice.a, f22.a),
                          max_abs_diff(twice.dx, f22.dx),
                          max_abs_diff(twice.dv, f22.dv),
                          max_abs_diff(twice.da, f22.da)});
        const TTPoint w{random_vec(rng, m), random_vec(rng, m),
                        random_vec(rng, m), random_vec(rng, m)};
        const TTPoint squared = F11(F11(w));
        worst = std::max({worst, max_abs(squared.dx), max_abs(squared.dv)});
    }
    report.row("vertical endomorphism composition", worst, 1e-15);

    worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const TTStarPoint z{random_vec(rng, m), random_vec(rng, m),
                            random_vec(rng, m), random_vec(rng, m)};
        const TTPoint w{z.x, z.v, z.v, random_vec(rng, m)};
        worst = std::max(
            worst, std::abs(pair_TT(alpha(z), w) - tangent_pair(z, kappa11(w))));
    }
    report.row("alpha-kappa duality", worst, 1e-15);

    worst = 0.0;
    {
        const Vec x = random_vec(rng, m), p = random_vec(rng, m);
        for (int i = 0; i < trials; ++i) {
            const TTStarPoint u{x, p, random_vec(rng, m), random_vec(rng, m)};
            const TTStarPoint up{x, p, random_vec(rng, m), random_vec(rng, m)};
            const double lhs = pair_TsTs(beta(u), up);
            const double expect = dot(u.pdot, up.v) - dot(u.v, up.pdot);
            worst = std::max({worst, std::abs(lhs - expect),
                              std::abs(pair_TsTs(beta(up), u) + lhs)});
        }
    }
    report.row("beta antisymmetry", worst, 1e-15);

    worst = 0.0;
    for (const auto &[name, sys] : corpus_systems()) {
        const std::size_t d = static_cast<std::size_t>(sys.dim);
        for (int i = 0; i < trials / 4; ++i) {
            const SecondTangent germ{random_vec(rng, d), random_vec(rng, d),
                                     random_vec(rng, d)};
            worst = std::max(worst,
                             max_abs(tulczyjew_identity_residual(sys, germ)));
        }
    }
    report.row("force-level lift identity", worst, 1e-12);

    return report.all_pass;
}

// ── check: variational-principle decay suite ────────────────────────────────

bool run_variational_checks() {
    const ParamMap params{{"m", 2.0},  {"g", 9.81}, {"gh", 0.5},
                          {"gv", 0.8}, {"v0", 10.0}};
    const LagrangianSystem sys = corpus_aircraft();
    const DesiredPath path = make_desired_path(
        2,
        {"(m*v0/gh)*(1 - exp(-gh*t/m))",
         "(m^2*g/gv^2)*(1 - exp(-gv*t/m)) - (m*g/gv)*t"},
        params);
    const ForceSchedule zero = make_force_schedule(2, {}, params);
    const double omega = 16.0 * std::acos(-1.0) / 5.0;
    const Variation var = make_variation(
        2,
        {"A1*cos(w*t) + 0.1*t^2 + 0.2", "A2*cos(w*t) - 0.05*t^2 + 0.1"},
        {{"A1", 1.0}, {"A2", 0.7}, {"w", omega}});

    const std::vector<double> steps{4e-3, 2e-3, 1e-3, 5e-4};
    std::vector<double> residuals;
    for (const double dt : steps) {
        const Trajectory traj = inverse_dynamics(sys, path, 0.0, 5.0, dt);
        residuals.push_back(std::abs(principle_residual(sys, traj, zero, var)));
    }

    std::printf("variational principle residual vs step size\n");
    std::printf("  %-10s %14s %8s\n", "dt", "|residual|", "ratio");
    bool pass = true;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i == 0) {
            std::printf("  %-10.1e %14.3e %8s\n", steps[i], residuals[i], "-");
            continue;
        }
        const double ratio = residuals[i - 1] / residuals[i];
        std::printf("  %-10.1e %14.3e %8.2f\n", steps[i], residuals[i], ratio);
        pass = pass && ratio >= 14.0 && ratio <= 18.0;
    }
    pass = pass && residuals[2] <= 1e-8;
    std::printf("  %-36s %12.3e   %s\n", "fourth-order decay", residuals[2],
                pass ? "PASS" : "FAIL");
    return pass;
}

int cmd_check(const std::string &suite) {
    bool pass = true;
    if (suite == "identities") {
        pass = run_identity_checks();
    } else if (suite == "variational") {
        pass = run_variational_checks();
    } else if (suite == "all") {
        pass = run_identity_checks();
        pass = run_variational_checks() && pass;
    } else {
        throw config_error("check.suite", "expected `identities`, "
                                          "`variational`, or `all`, got `" +
                                              suite + "`");
    }
    std::printf("%s\n", pass ? "all checks passed" : "checks FAILED");
    return pass ? 0 : 3;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"forced-mechanics engine"};
    app.require_subcommand(1);

    std::string scenario_path, suite;
    bool steady = false;

    CLI::App *sim = app.add_subcommand(
        "simulate", "integrate a scenario and write a trajectory CSV");
    sim->add_option("file", scenario_path, "scenario file")->required();

    CLI::App *inv = app.add_subcommand(
        "invert", "recover the force schedule for a desired path");
    inv->add_option("file", scenario_path, "scenario file")->required();

    CLI::App *chk =
        app.add_subcommand("check", "run built-in identity suites");
    chk->add_option("suite", suite, "identities | variational | all")
        ->required();

    CLI::App *air =
        app.add_subcommand("aircraft", "run the bundled aircraft scenario");
    air->add_flag("--steady", steady, "steady-flight variant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sim)
            return cmd_simulate(load_scenario_file(scenario_path));
        if (*inv)
            return cmd_invert(load_scenario_file(scenario_path));
        if (*chk)
            return cmd_check(suite);
        return cmd_aircraft(steady);
    } catch (const config_error &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const error &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
