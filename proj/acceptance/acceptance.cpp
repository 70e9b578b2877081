// acceptance — end-to-end acceptance runner for the forced-mechanics engine.
//
// Each numbered criterion prints exactly one PASS/FAIL line carrying the
// measured quantity and its pinned tolerance. The process exits 0 only if
// every criterion passes. All randomness is seeded, so the run is
// deterministic.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmech/bundle.hpp>
#include <fmech/corpus.hpp>
#include <fmech/expr.hpp>
#include <fmech/hamiltonian.hpp>
#include <fmech/integrate.hpp>
#include <fmech/lagrangian.hpp>
#include <fmech/linalg.hpp>
#include <fmech/poisson.hpp>
#include <fmech/system.hpp>
#include <fmech/varcheck.hpp>

namespace {

using namespace fmech;

int g_failures = 0;

std::string strf(const char *format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

void report(int id, bool pass, const std::string &detail) {
    std::printf("[%2d] %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass)
        ++g_failures;
}

// ── shared fixtures ─────────────────────────────────────────────────────────

/// Closed-form aircraft free flight: horizontal launch at v0 under gravity
/// with anisotropic linear drag.
struct Flight {
    double m = 2.0, g = 9.81, gh = 0.5, gv = 0.8, v0 = 10.0;
    double xh(double t) const {
        return (m * v0 / gh) * (1.0 - std::exp(-gh * t / m));
    }
    double vh(double t) const { return v0 * std::exp(-gh * t / m); }
    double xv(double t) const {
        return (m * m * g / (gv * gv)) * (1.0 - std::exp(-gv * t / m)) -
               (m * g / gv) * t;
    }
    double vv(double t) const {
        return (m * g / gv) * (std::exp(-gv * t / m) - 1.0);
    }
};

const ParamMap kFlightParams{
    {"m", 2.0}, {"g", 9.81}, {"gh", 0.5}, {"gv", 0.8}, {"v0", 10.0}};

/// The same flight as expressions, for sampling exact-solution trajectories.
DesiredPath flight_path() {
    return make_desired_path(
        2,
        {"(m*v0/gh)*(1 - exp(-gh*t/m))",
         "(m^2*g/gv^2)*(1 - exp(-gv*t/m)) - (m*g/gv)*t"},
        kFlightParams);
}

Vec random_vec(std::mt19937 &rng, std::size_t m, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Vec r(m);
    for (double &c : r)
        c = dist(rng);
    return r;
}

double max_abs(const Vec &a) {
    double worst = 0.0;
    for (double c : a)
        worst = std::max(worst, std::abs(c));
    return worst;
}

double max_abs_diff(const Vec &a, const Vec &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

/// Fourth-order five-point first-derivative stencil on a uniform grid,
/// with one-sided forms at the edges.
double five_point_rate(const Vec &f, double dt, std::size_t i) {
    const std::size_t n = f.size();
    const double s = 1.0 / (12.0 * dt);
    if (i >= 2 && i + 2 < n)
        return s *
               (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
    if (i == 0)
        return s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
                    3.0 * f[4]);
    if (i == 1)
        return s *
               (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    if (i + 1 == n)
        return s * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
                    16.0 * f[n - 4] + 3.0 * f[n - 5]);
    return s * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] +
                6.0 * f[n - 4] - f[n - 5]);
}

/// Ten-element variation family with endpoint-nonvanishing members. The
/// frequency is tuned so the cosine terms reinforce at both endpoints,
/// keeping the quadrature error of the residual integrals well above the
/// rounding floor for the step-halving ratio measurement.
std::vector<Variation> variation_family() {
    std::vector<Variation> family;
    const double omega = 16.0 * std::acos(-1.0) / 5.0;
    std::mt19937 rng(20260822u);
    std::uniform_real_distribution<double> amp(0.5, 1.5), poly(-0.3, 0.3);
    for (int k = 0; k < 10; ++k) {
        const double a1 = amp(rng), a2 = amp(rng);
        const double c1 = poly(rng), c2 = poly(rng);
        const double d1 = poly(rng), d2 = poly(rng);
        family.push_back(make_variation(
            2,
            {"A1*cos(w*t) + C1*t^2 + D1", "A2*cos(w*t) + C2*t^2 + D2"},
            {{"A1", a1},
             {"A2", a2},
             {"C1", c1},
             {"C2", c2},
             {"D1", d1},
             {"D2", d2},
             {"w", omega}}));
    }
    return family;
}

// ── criteria ────────────────────────────────────────────────────────────────

/// 1: free-flight accuracy and runtime against the closed form.
Trajectory criterion_1() {
    const LagrangianSystem sys = corpus_aircraft();
    const ForceSchedule zero = make_force_schedule(2, {});
    const auto start = std::chrono::steady_clock::now();
    const Trajectory traj =
        simulate_lagrangian(sys, zero, {{0.0, 0.0}, {10.0, 0.0}}, 0.0, 5.0,
                            1e-3);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    const Flight exact;
    double worst = 0.0;
    for (std::size_t r = 0; r < traj.samples(); ++r) {
        const double t = traj.t[r];
        const Vec x = traj.x_row(r), v = traj.v_row(r);
        worst = std::max({worst, std::abs(x[0] - exact.xh(t)),
                          std::abs(x[1] - exact.xv(t)),
                          std::abs(v[0] - exact.vh(t)),
                          std::abs(v[1] - exact.vv(t))});
    }
    const double endpoint = traj.x_row(traj.samples() - 1)[0];
    const bool pass = worst <= 1e-8 && seconds < 1.0 &&
                      std::abs(endpoint - 28.539808125592395987) <= 1e-8;
    report(1, pass,
           strf("free flight: max |error| %.2e <= 1e-8, runtime %.3f s < 1 s, "
                "final horizontal range %.6f",
                worst, seconds, endpoint));
    return traj;
}

/// 2: inverse dynamics on steady level flight recovers constant thrust.
void criterion_2() {
    const LagrangianSystem sys = corpus_aircraft();
    const DesiredPath path =
        make_desired_path(2, {"v0*t", "0"}, {{"v0", 10.0}});
    const Trajectory traj = inverse_dynamics(sys, path, 0.0, 5.0, 1e-3);
    double worst = 0.0;
    for (std::size_t r = 0; r < traj.samples(); ++r) {
        const Vec f = traj.f_row(r);
        worst = std::max(
            {worst, std::abs(f[0] - 5.0), std::abs(f[1] - 19.62)});
    }
    report(2, worst <= 1e-12,
           strf("steady thrust recovery: max |zeta - (5, 19.62)| %.2e <= "
                "1e-12 at every sample",
                worst));
}

/// 3: boundary momenta of the free flight, including the guard that the
/// endpoint values match the independently derived decay laws and not the
/// transcription error they are sometimes quoted with.
void criterion_3(const Trajectory &traj) {
    const LagrangianSystem sys = corpus_aircraft();
    const auto [eta_a, eta_b] = boundary_momenta(sys, traj);
    const bool start_exact = eta_a.p == Vec{20.0, 0.0};

    const double derived_h = 5.7300959372038020065;   // m v0 e^{-gh T/m}
    const double derived_v = -42.411804357244147463;  // -(m^2 g/gv)(1-e^{-gv T/m})
    const double err_h = std::abs(eta_b.p[0] - derived_h);
    const double err_v = std::abs(eta_b.p[1] - derived_v);

    // Known transcription error for this flight: a doubled horizontal value
    // and a vertical value computed with the wrong decay rate. The computed
    // momenta must sit far from both.
    const double typo_h = 11.460191874407604013;
    const double typo_v = -34.996939714007675579;
    const bool far_from_typo = std::abs(eta_b.p[0] - typo_h) > 5.0 &&
                               std::abs(eta_b.p[1] - typo_v) > 7.0;

    const bool pass =
        start_exact && err_h <= 1e-8 && err_v <= 1e-8 && far_from_typo;
    report(3, pass,
           strf("boundary momenta: eta(0) = (20, 0) exactly %s, |eta(T) - "
                "derived| = (%.2e, %.2e) <= 1e-8, distinct from the "
                "transcribed values",
                start_exact ? "yes" : "NO", err_h, err_v));
}

/// 4: the two simulation pictures agree, and both satisfy the bracket form
/// of the forced evolution law over a ten-observable basis, with the rates
/// estimated from trajectory samples by five-point finite differences so the
/// check does not reuse the integrator's own right-hand side.
void criterion_4(const Trajectory &lag) {
    const LagrangianSystem sys = corpus_aircraft();
    const ForceSchedule zero = make_force_schedule(2, {});
    const Trajectory ham = simulate_hamiltonian(
        sys, zero, {{0.0, 0.0}, {20.0, 0.0}}, 0.0, 5.0, 1e-3);

    double divergence = 0.0;
    for (std::size_t r = 0; r < lag.samples(); ++r) {
        divergence = std::max({divergence,
                               max_abs_diff(lag.x_row(r), ham.x_row(r)),
                               max_abs_diff(lag.v_row(r), ham.v_row(r)),
                               max_abs_diff(lag.p_row(r), ham.p_row(r))});
    }

    std::set<std::string> names;
    for (const auto &kv : sys.params)
        names.insert(kv.first);
    const char *basis_texts[10] = {
        "x1",          "x2",          "p1",
        "p2",          "x1*p1",       "x2*p2 + x1",
        "p1^2 + p2^2", "sin(x2)",     "exp(0.1*x1)",
        "(p1 + p2)*x2 + cos(0.1*p2)"};
    std::vector<ObservableExpr> basis;
    for (const char *text : basis_texts)
        basis.push_back(parse(text, 2, names, VarPolicy::observable()));

    double residual = 0.0;
    for (const Trajectory *traj : {&lag, &ham}) {
        const std::size_t n = traj->samples();
        const double dt = traj->t[1] - traj->t[0];
        // Per-component sample arrays for the finite-difference rates.
        std::vector<Vec> xs(2, Vec(n)), ps(2, Vec(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < 2; ++k) {
                xs[k][r] = traj->x[r * 2 + k];
                ps[k][r] = traj->p[r * 2 + k];
            }
        for (std::size_t r = 0; r < n; ++r) {
            const ForceMomentumSample sample{traj->x_row(r), traj->f_row(r),
                                            traj->p_row(r)};
            const Vec xdot{five_point_rate(xs[0], dt, r),
                           five_point_rate(xs[1], dt, r)};
            const Vec pdot{five_point_rate(ps[0], dt, r),
                           five_point_rate(ps[1], dt, r)};
            for (const ObservableExpr &F : basis)
                residual = std::max(
                    residual,
                    std::abs(evolution_residual(sys, F, sample, xdot, pdot)));
        }
    }

    report(4, divergence <= 1e-7 && residual <= 1e-8,
           strf("picture agreement: max divergence %.2e <= 1e-7; bracket "
                "evolution law over 10 observables: max residual %.2e <= 1e-8",
                divergence, residual));
}

/// 5: the force-level lift identity holds off shell on every corpus system.
void criterion_5() {
    std::mt19937 rng(50101u);
    double worst = 0.0;
    for (const auto &[name, sys] : corpus_systems()) {
        const std::size_t d = static_cast<std::size_t>(sys.dim);
        for (int i = 0; i < 1000; ++i) {
            const SecondTangent germ{random_vec(rng, d, -2.0, 2.0),
                                     random_vec(rng, d, -2.0, 2.0),
                                     random_vec(rng, d, -2.0, 2.0)};
            worst = std::max(worst,
                             max_abs(tulczyjew_identity_residual(sys, germ)));
        }
    }
    report(5, worst <= 1e-12,
           strf("force-level lift identity: max residual %.2e <= 1e-12 over "
                "4000 random germs on 4 systems",
                worst));
}

/// 6: the canonical-map identities at 1000 random points each.
void criterion_6() {
    std::mt19937 rng(60606u);
    constexpr std::size_t m = 3;

    double kappa_res = 0.0, comp_res = 0.0, dual_res = 0.0, beta_res = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const TTPoint w{random_vec(rng, m, -2.0, 2.0),
                        random_vec(rng, m, -2.0, 2.0),
                        random_vec(rng, m, -2.0, 2.0),
                        random_vec(rng, m, -2.0, 2.0)};
        const TTPoint back = kappa11(kappa11(w));
        kappa_res = std::max(
            {kappa_res, max_abs_diff(back.x, w.x), max_abs_diff(back.v, w.v),
             max_abs_diff(back.dx, w.dx), max_abs_diff(back.dv, w.dv)});

        const TT2Point u{random_vec(rng, m, -2.0, 2.0),
                         random_vec(rng, m, -2.0, 2.0),
                         random_vec(rng, m, -2.0, 2.0),
                         random_vec(rng, m, -2.0, 2.0),
                         random_vec(rng, m, -2.0, 2.0),
                         random_vec(rng, m, -2.0, 2.0)};
        const TT2Point twice = F21(F21(u));
        const TT2Point f22 = F22(u);
        comp_res = std::max(
            {comp_res, max_abs_diff(twice.x, f22.x),
             max_abs_diff(twice.v, f22.v), max_abs_diff(twice.a, f22.a),
             max_abs_diff(twice.dx, f22.dx), max_abs_diff(twice.dv, f22.dv),
             max_abs_diff(twice.da, f22.da)});
        const TTPoint squared = F11(F11(w));
        comp_res =
            std::max({comp_res, max_abs(squared.dx), max_abs(squared.dv)});

        const TTStarPoint z{random_vec(rng, m, -2.0, 2.0),
                            random_vec(rng, m, -2.0, 2.0),
                            random_vec(rng, m, -2.0, 2.0),
                            random_vec(rng, m, -2.0, 2.0)};
        const TTPoint wz{z.x, z.v, z.v, random_vec(rng, m, -2.0, 2.0)};
        dual_res = std::max(dual_res,
                            std::abs(pair_TT(alpha(z), wz) -
                                     tangent_pair(z, kappa11(wz))));

        const Vec bx = random_vec(rng, m, -2.0, 2.0),
                  bp = random_vec(rng, m, -2.0, 2.0);
        const TTStarPoint s1{bx, bp, random_vec(rng, m, -2.0, 2.0),
                             random_vec(rng, m, -2.0, 2.0)};
        const TTStarPoint s2{bx, bp, random_vec(rng, m, -2.0, 2.0),
                             random_vec(rng, m, -2.0, 2.0)};
        const double lhs = pair_TsTs(beta(s1), s2);
        const double expect = dot(s1.pdot, s2.v) - dot(s1.v, s2.pdot);
        beta_res = std::max({beta_res, std::abs(lhs - expect),
                             std::abs(pair_TsTs(beta(s2), s1) + lhs)});
    }

    const double worst =
        std::max({kappa_res, comp_res, dual_res, beta_res});
    report(6, worst <= 1e-15,
           strf("canonical maps: involution %.1e, composition %.1e, duality "
                "%.1e, antisymmetry %.1e, all <= 1e-15",
                kappa_res, comp_res, dual_res, beta_res));
}

/// 7: the variational principle holds on solution trajectories with
/// endpoint-nonvanishing variations, and the residual decays at fourth
/// order. The decay ratio is measured on exact-solution samples so the
/// quadrature error is isolated from the integrator's own error.
void criterion_7(const Trajectory &simulated) {
    const LagrangianSystem sys = corpus_aircraft();
    const ForceSchedule zero = make_force_schedule(2, {});
    const std::vector<Variation> family = variation_family();

    double sim_res = 0.0;
    for (const Variation &var : family)
        sim_res = std::max(
            sim_res, std::abs(principle_residual(sys, simulated, zero, var)));

    const DesiredPath path = flight_path();
    const Trajectory coarse = inverse_dynamics(sys, path, 0.0, 5.0, 1e-3);
    const Trajectory fine = inverse_dynamics(sys, path, 0.0, 5.0, 5e-4);
    double ratio_lo = 1e300, ratio_hi = 0.0;
    for (const Variation &var : family) {
        const double rc = std::abs(principle_residual(sys, coarse, zero, var));
        const double rf = std::abs(principle_residual(sys, fine, zero, var));
        const double ratio = rc / rf;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
    }

    const bool pass = sim_res <= 1e-8 && ratio_lo >= 14.0 && ratio_hi <= 18.0;
    report(7, pass,
           strf("variational principle: max residual %.2e <= 1e-8 over 10 "
                "variations; halving ratios in [%.2f, %.2f] within [14, 18]",
                sim_res, ratio_lo, ratio_hi));
}

/// 8: forward-mode derivatives match central finite differences over a
/// corpus of expressions exercising every operator and function.
void criterion_8() {
    struct Entry {
        const char *text;
        int dim;
    };
    const Entry corpus[] = {
        {"x1^3 - 2*x1*v1 + v1^2", 1},
        {"sin(x1)*cos(v1) + exp(0.3*x1)", 1},
        {"ln(1 + x1^2) + sqrt(4 + v1^2)", 1},
        {"x1*p1 + p1^2/(1 + x1^2)", 1},
        {"sin(2*t)*x1 + t^2*v1", 1},
        {"0.5*(v1^2 + v2^2) - 9.81*x2", 2},
        {"exp(-0.25*x1)*sin(0.8*v2)", 2},
        {"(x1 + v2)^4/(2 + cos(p1))", 2},
        {"sqrt(1 + (x1 - v1)^2)/(1 + exp(-p1))", 1},
        {"x1^2*x2 - x2^3/(1 + v1^2) + p2*t", 2},
        {"cos(x1)^2 + sin(x1)^2", 1},
        {"t^3 - 2*t + 1/(2 + sin(t))", 1},
        {"v1*v2*p1*p2", 2},
        {"(1 + x1^2)^(-2)", 1},
        {"exp(sin(t) + cos(x1))*sqrt(2 + v1)", 1},
    };

    std::mt19937 rng(80808u);
    const double h = 1e-5;
    double worst = 0.0;

    for (const Entry &entry : corpus) {
        const Expression e = parse(entry.text, entry.dim, {}, VarPolicy::any());
        const std::size_t m = static_cast<std::size_t>(entry.dim);
        for (int trial = 0; trial < 5; ++trial) {
            EvalPoint pt;
            pt.x = random_vec(rng, m, -1.2, 1.2);
            pt.v = random_vec(rng, m, -1.2, 1.2);
            pt.p = random_vec(rng, m, -1.2, 1.2);
            pt.t = std::uniform_real_distribution<double>(-1.2, 1.2)(rng);

            const auto check = [&](double ad, double plus, double minus) {
                const double fd = (plus - minus) / (2.0 * h);
                worst = std::max(worst,
                                 std::abs(ad - fd) / std::max(1.0, std::abs(ad)));
            };

            const Vec gx = grad_x(e, pt), gv = grad_v(e, pt),
                      gp = grad_p(e, pt);
            for (std::size_t k = 0; k < m; ++k) {
                EvalPoint q = pt;
                q.x[k] = pt.x[k] + h;
                const double xp = eval(e, q);
                q.x[k] = pt.x[k] - h;
                check(gx[k], xp, eval(e, q));
                q = pt;
                q.v[k] = pt.v[k] + h;
                const double vp = eval(e, q);
                q.v[k] = pt.v[k] - h;
                check(gv[k], vp, eval(e, q));
                q = pt;
                q.p[k] = pt.p[k] + h;
                const double pp = eval(e, q);
                q.p[k] = pt.p[k] - h;
                check(gp[k], pp, eval(e, q));
            }
            EvalPoint q = pt;
            q.t = pt.t + h;
            const double tp = eval(e, q);
            q.t = pt.t - h;
            check(time_jet(e, pt).first, tp, eval(e, q));
        }
    }

    report(8, worst <= 1e-6,
           strf("derivative cross-check: max relative error %.2e <= 1e-6 "
                "over 15 expressions, 5 points each, all slots",
                worst));
}

/// 9: the momentum map round-trips through its Newton inverse quickly.
void criterion_9() {
    std::mt19937 rng(90909u);
    double worst = 0.0;
    int worst_iters = 0;
    for (const auto &[name, sys] : corpus_systems()) {
        const std::size_t d = static_cast<std::size_t>(sys.dim);
        for (int i = 0; i < 250; ++i) {
            const TangentVector u{random_vec(rng, d, -1.5, 1.5),
                                  random_vec(rng, d, -1.5, 1.5)};
            const Covector p = legendre(sys, u);
            int iters = 0;
            const TangentVector back = legendre_invert(sys, p, {}, &iters);
            worst = std::max(worst, max_abs_diff(back.v, u.v));
            worst_iters = std::max(worst_iters, iters);
        }
    }
    report(9, worst <= 1e-12 && worst_iters <= 6,
           strf("momentum round trip: max |v - invert(legendre(v))| %.2e <= "
                "1e-12, Newton iterations <= %d (bound 6)",
                worst, worst_iters));
}

/// 10: the canonical bracket is exactly antisymmetric and satisfies the
/// Leibniz and Jacobi identities at random phase-space points.
void criterion_10() {
    const ObservableExpr F =
        parse("x1*p2 + sin(x2)", 2, {}, VarPolicy::observable());
    const ObservableExpr G =
        parse("p1^2 - x2*p2", 2, {}, VarPolicy::observable());
    const ObservableExpr K =
        parse("cos(x1) + x1*p1*p2", 2, {}, VarPolicy::observable());
    const ObservableExpr FG = expr_mul(F, G);
    const ObservableExpr GK = bracket_expr(G, K);
    const ObservableExpr KF = bracket_expr(K, F);
    const ObservableExpr FGb = bracket_expr(F, G);

    std::mt19937 rng(101010u);
    double anti = 0.0, leibniz = 0.0, jacobi = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Covector at{random_vec(rng, 2, -1.5, 1.5),
                          random_vec(rng, 2, -1.5, 1.5)};
        anti = std::max(anti, std::abs(poisson_bracket(F, G, at) +
                                       poisson_bracket(G, F, at)));

        EvalPoint pt;
        pt.x = at.x;
        pt.p = at.p;
        const double f_val = eval(F, pt), g_val = eval(G, pt);
        leibniz = std::max(
            leibniz, std::abs(poisson_bracket(FG, K, at) -
                              f_val * poisson_bracket(G, K, at) -
                              poisson_bracket(F, K, at) * g_val));

        jacobi = std::max(jacobi, std::abs(poisson_bracket(F, GK, at) +
                                           poisson_bracket(G, KF, at) +
                                           poisson_bracket(K, FGb, at)));
    }

    const bool pass = anti == 0.0 && leibniz <= 1e-12 && jacobi <= 1e-6;
    report(10, pass,
           strf("canonical bracket: antisymmetry defect %.1e (exact), "
                "Leibniz %.2e <= 1e-12, Jacobi %.2e <= 1e-6 at 100 points",
                anti, leibniz, jacobi));
}

} // namespace

int main() {
    std::printf("forced-mechanics acceptance run\n");
    const Trajectory free_flight = criterion_1();
    criterion_2();
    criterion_3(free_flight);
    criterion_4(free_flight);
    criterion_5();
    criterion_6();
    criterion_7(free_flight);
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
