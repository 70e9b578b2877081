// fmech — time integration of forced dynamics
// Fixed-step classical RK4 in both pictures (second-order Lagrangian flow on
// (x, ẋ) and first-order Hamiltonian flow on (x, p)), boundary momenta, and
// inverse dynamics (control-force recovery along a desired path).
//
// Conventions: a trajectory always stores configuration, velocity, momentum
// and external force at every sample, regardless of which picture produced
// it, so cross-checks and file output are uniform. Sample times are computed
// as t_k = t0 + k·dt from the start time, never accumulated, so the grid is
// exactly uniform in the floating-point sense.
#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <fmech/errors.hpp>
#include <fmech/expr.hpp>
#include <fmech/hamiltonian.hpp>
#include <fmech/lagrangian.hpp>
#include <fmech/linalg.hpp>
#include <fmech/system.hpp>

namespace fmech {

// ───────────────────────── force schedules ─────────────────────────

/// A time-dependent external force covector ζ(t): one expression per
/// configuration coordinate, each referencing only `t` and named parameters.
struct ForceSchedule {
    std::vector<Expression> zeta; ///< components ζ_1..ζ_m as functions of t
    ParamMap params;              ///< named constants bound at evaluation

    int dim() const { return static_cast<int>(zeta.size()); }

    /// Evaluate all components at time t.
    Vec at(double t) const {
        EvalPoint pt;
        pt.t = t;
        pt.params = params;
        Vec f(zeta.size());
        for (std::size_t k = 0; k < zeta.size(); ++k)
            f[k] = eval(zeta[k], pt);
        return f;
    }
};

/// Build a schedule from expression texts in `t`. An empty list means the
/// force-free schedule ζ ≡ 0; otherwise exactly `dim` texts are required.
inline ForceSchedule make_force_schedule(int dim,
                                         const std::vector<std::string> &texts,
                                         const ParamMap &params = {}) {
    if (dim < 1)
        throw config_error("system.dim", "must be a positive integer");
    std::vector<std::string> use = texts;
    if (use.empty())
        use.assign(static_cast<std::size_t>(dim), "0");
    if (static_cast<int>(use.size()) != dim)
        throw config_error("forces.zeta",
                           "expected " + std::to_string(dim) +
                               " component expressions, got " +
                               std::to_string(use.size()));
    std::set<std::string> names;
    for (const auto &kv : params)
        names.insert(kv.first);
    ForceSchedule sched;
    sched.params = params;
    sched.zeta.reserve(use.size());
    for (const std::string &text : use)
        sched.zeta.push_back(parse(text, dim, names, VarPolicy::time_only()));
    return sched;
}

// ───────────────────────── trajectories ─────────────────────────

/// A sampled force-momentum trajectory on a uniform time grid: configuration,
/// velocity, momentum and external force at each of N samples. The state
/// grids are row-major N×m (`grid[row*dim + k]`).
struct Trajectory {
    Vec t;       ///< N sample times, strictly increasing, uniform step
    Vec x;       ///< configurations, N×m row-major
    Vec v;       ///< velocities, N×m row-major
    Vec p;       ///< momenta, N×m row-major
    Vec f;       ///< external forces, N×m row-major
    int dim = 0; ///< number of configuration coordinates m

    std::size_t samples() const { return t.size(); }

    /// Flat index of coordinate k (0-based) in sample row `row`.
    std::size_t index(std::size_t row, int k) const {
        return row * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k);
    }

    /// Copy one m-vector row out of a state grid.
    Vec row(const Vec &grid, std::size_t r) const {
        const std::size_t m = static_cast<std::size_t>(dim);
        Vec out(m);
        for (std::size_t k = 0; k < m; ++k)
            out[k] = grid[r * m + k];
        return out;
    }

    Vec x_row(std::size_t r) const { return row(x, r); }
    Vec v_row(std::size_t r) const { return row(v, r); }
    Vec p_row(std::size_t r) const { return row(p, r); }
    Vec f_row(std::size_t r) const { return row(f, r); }
};

namespace detail {

/// Number of samples on the closed grid [t0, t1] with step dt. The span must
/// be an integer multiple of dt to within a small relative slack; otherwise
/// the grid is rejected rather than silently truncated.
inline std::size_t grid_samples(double t0, double t1, double dt) {
    if (!(dt > 0.0))
        throw config_error("simulation.dt", "must be positive");
    if (!(t1 > t0))
        throw config_error("simulation.t1", "must exceed t0");
    const double ratio = (t1 - t0) / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-6 * std::max(1.0, std::abs(ratio)))
        throw config_error("simulation.dt",
                           "the span t1 - t0 is not an integer multiple of dt");
    return static_cast<std::size_t>(rounded) + 1;
}

/// Allocate an N-sample trajectory with t_k = t0 + k·dt.
inline Trajectory empty_trajectory(int dim, double t0, double dt,
                                   std::size_t n) {
    Trajectory traj;
    traj.dim = dim;
    traj.t.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        traj.t[k] = t0 + static_cast<double>(k) * dt;
    const std::size_t cells = n * static_cast<std::size_t>(dim);
    traj.x.assign(cells, 0.0);
    traj.v.assign(cells, 0.0);
    traj.p.assign(cells, 0.0);
    traj.f.assign(cells, 0.0);
    return traj;
}

/// y += c * k, componentwise.
inline void axpy(Vec &y, double c, const Vec &k) {
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += c * k[i];
}

/// Format a time for error context without locale surprises.
inline std::string at_time(double t) { return "at t=" + std::to_string(t); }

} // namespace detail

// ───────────────────────── simulation: Lagrangian picture ─────────────────────────

/// Integrate the forced Euler–Lagrange flow as a first-order system in
/// (x, ẋ), the acceleration recovered from the velocity-Hessian solve at each
/// stage. Classical RK4 with fixed step; momentum rows are filled through the
/// Legendre map and force rows from the schedule.
inline Trajectory simulate_lagrangian(const LagrangianSystem &sys,
                                      const ForceSchedule &sched,
                                      const TangentVector &init, double t0,
                                      double t1, double dt) {
    if (sched.dim() != sys.dim)
        throw config_error("forces.zeta",
                           "schedule dimension does not match the system");
    const std::size_t n = detail::grid_samples(t0, t1, dt);
    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Trajectory traj = detail::empty_trajectory(sys.dim, t0, dt, n);

    // State derivative (ẋ, ẍ) at (t, x, v).
    const auto rate = [&](double t, const Vec &x, const Vec &v, Vec &dx,
                          Vec &dv) {
        dx = v;
        dv = solve_accel(sys, TangentVector{x, v}, Covector{x, sched.at(t)}).a;
    };

    Vec x = init.x, v = init.v;
    Vec k1x(m), k1v(m), k2x(m), k2v(m), k3x(m), k3v(m), k4x(m), k4v(m);
    Vec xs(m), vs(m);
    for (std::size_t row = 0; row < n; ++row) {
        const double t = traj.t[row];
        const Covector eta = legendre(sys, TangentVector{x, v});
        const Vec force = sched.at(t);
        for (std::size_t k = 0; k < m; ++k) {
            traj.x[traj.index(row, static_cast<int>(k))] = x[k];
            traj.v[traj.index(row, static_cast<int>(k))] = v[k];
            traj.p[traj.index(row, static_cast<int>(k))] = eta.p[k];
            traj.f[traj.index(row, static_cast<int>(k))] = force[k];
        }
        if (row + 1 == n)
            break;

        try {
            rate(t, x, v, k1x, k1v);
            xs = x;
            vs = v;
            detail::axpy(xs, 0.5 * dt, k1x);
            detail::axpy(vs, 0.5 * dt, k1v);
            rate(t + 0.5 * dt, xs, vs, k2x, k2v);
            xs = x;
            vs = v;
            detail::axpy(xs, 0.5 * dt, k2x);
            detail::axpy(vs, 0.5 * dt, k2v);
            rate(t + 0.5 * dt, xs, vs, k3x, k3v);
            xs = x;
            vs = v;
            detail::axpy(xs, dt, k3x);
            detail::axpy(vs, dt, k3v);
            rate(t + dt, xs, vs, k4x, k4v);
        } catch (const singular_mass_matrix_error &e) {
            throw singular_mass_matrix_error(e.condition, detail::at_time(t));
        }

        for (std::size_t k = 0; k < m; ++k) {
            x[k] += dt / 6.0 * (k1x[k] + 2.0 * k2x[k] + 2.0 * k3x[k] + k4x[k]);
            v[k] += dt / 6.0 * (k1v[k] + 2.0 * k2v[k] + 2.0 * k3v[k] + k4v[k]);
        }
    }
    return traj;
}

// ───────────────────────── simulation: Hamiltonian picture ─────────────────────────

/// Integrate the forced Hamiltonian flow on phase space: RK4 on (x, p) with
/// rates (∂𝓗/∂p, ζ − ∂𝓗/∂x − ρ∘Λ); the unforced part of the rate is the
/// phase-space vector field, the schedule adds ζ(t) vertically. Velocity rows
/// are recovered with the Newton inverse of the Legendre map.
inline Trajectory simulate_hamiltonian(const LagrangianSystem &sys,
                                       const ForceSchedule &sched,
                                       const Covector &init, double t0,
                                       double t1, double dt) {
    if (sched.dim() != sys.dim)
        throw config_error("forces.zeta",
                           "schedule dimension does not match the system");
    const std::size_t n = detail::grid_samples(t0, t1, dt);
    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Trajectory traj = detail::empty_trajectory(sys.dim, t0, dt, n);

    const auto rate = [&](double t, const Vec &x, const Vec &p, Vec &dx,
                          Vec &dp) {
        const TTStarPoint z = vector_field_Z(sys, Covector{x, p});
        const Vec force = sched.at(t);
        dx = z.v;
        dp = z.pdot;
        for (std::size_t k = 0; k < m; ++k)
            dp[k] += force[k];
    };

    Vec x = init.x, p = init.p;
    Vec k1x(m), k1p(m), k2x(m), k2p(m), k3x(m), k3p(m), k4x(m), k4p(m);
    Vec xs(m), ps(m);
    for (std::size_t row = 0; row < n; ++row) {
        const double t = traj.t[row];
        try {
            const TangentVector u = legendre_invert(sys, Covector{x, p});
            const Vec force = sched.at(t);
            for (std::size_t k = 0; k < m; ++k) {
                traj.x[traj.index(row, static_cast<int>(k))] = x[k];
                traj.v[traj.index(row, static_cast<int>(k))] = u.v[k];
                traj.p[traj.index(row, static_cast<int>(k))] = p[k];
                traj.f[traj.index(row, static_cast<int>(k))] = force[k];
            }
            if (row + 1 == n)
                break;

            rate(t, x, p, k1x, k1p);
            xs = x;
            ps = p;
            detail::axpy(xs, 0.5 * dt, k1x);
            detail::axpy(ps, 0.5 * dt, k1p);
            rate(t + 0.5 * dt, xs, ps, k2x, k2p);
            xs = x;
            ps = p;
            detail::axpy(xs, 0.5 * dt, k2x);
            detail::axpy(ps, 0.5 * dt, k2p);
            rate(t + 0.5 * dt, xs, ps, k3x, k3p);
            xs = x;
            ps = p;
            detail::axpy(xs, dt, k3x);
            detail::axpy(ps, dt, k3p);
            rate(t + dt, xs, ps, k4x, k4p);
        } catch (const no_convergence_error &e) {
            throw no_convergence_error(e.iterations, e.last_residual,
                                       detail::at_time(t));
        } catch (const singular_mass_matrix_error &e) {
            throw singular_mass_matrix_error(e.condition, detail::at_time(t));
        }

        for (std::size_t k = 0; k < m; ++k) {
            x[k] += dt / 6.0 * (k1x[k] + 2.0 * k2x[k] + 2.0 * k3x[k] + k4x[k]);
            p[k] += dt / 6.0 * (k1p[k] + 2.0 * k2p[k] + 2.0 * k3p[k] + k4p[k]);
        }
    }
    return traj;
}

// ───────────────────────── boundary momenta ─────────────────────────

/// Momentum covectors at the two ends of a trajectory, read through the
/// Legendre map from the sampled (x, ẋ) rows.
inline std::pair<Covector, Covector> boundary_momenta(const LagrangianSystem &sys,
                                                      const Trajectory &traj) {
    if (traj.samples() == 0)
        throw grid_error("boundary momenta of an empty trajectory");
    const std::size_t last = traj.samples() - 1;
    return {legendre(sys, TangentVector{traj.x_row(0), traj.v_row(0)}),
            legendre(sys, TangentVector{traj.x_row(last), traj.v_row(last)})};
}

// ───────────────────────── inverse dynamics ─────────────────────────

/// A desired configuration path: one expression per coordinate, each a
/// function of `t` (and named parameters). First and second time derivatives
/// come from the second-order arithmetic, so they can never drift out of
/// sync with the path itself.
struct DesiredPath {
    std::vector<Expression> coords; ///< ξ_1(t)..ξ_m(t)
    ParamMap params;

    int dim() const { return static_cast<int>(coords.size()); }

    /// Sample (ξ(t), ξ̇(t), ξ̈(t)).
    SecondTangent at(double t) const {
        EvalPoint pt;
        pt.t = t;
        pt.params = params;
        const std::size_t m = coords.size();
        SecondTangent s{Vec(m), Vec(m), Vec(m)};
        for (std::size_t k = 0; k < m; ++k) {
            const TimeJet jet = time_jet(coords[k], pt);
            s.x[k] = jet.value;
            s.v[k] = jet.first;
            s.a[k] = jet.second;
        }
        return s;
    }
};

/// Build a desired path from expression texts in `t`; exactly `dim` texts.
inline DesiredPath make_desired_path(int dim,
                                     const std::vector<std::string> &texts,
                                     const ParamMap &params = {}) {
    if (dim < 1)
        throw config_error("system.dim", "must be a positive integer");
    if (static_cast<int>(texts.size()) != dim)
        throw config_error("desired.path",
                           "expected " + std::to_string(dim) +
                               " coordinate expressions, got " +
                               std::to_string(texts.size()));
    std::set<std::string> names;
    for (const auto &kv : params)
        names.insert(kv.first);
    DesiredPath path;
    path.params = params;
    path.coords.reserve(texts.size());
    for (const std::string &text : texts)
        path.coords.push_back(parse(text, dim, names, VarPolicy::time_only()));
    return path;
}

/// Control-force recovery along second-order data: the external force at each
/// sample is exactly the Euler–Lagrange covector of the germ there. The
/// result is a full trajectory whose force rows hold the recovered schedule.
inline Trajectory inverse_dynamics(const LagrangianSystem &sys, const Vec &times,
                                   const std::vector<SecondTangent> &germs) {
    if (times.size() != germs.size())
        throw grid_error("inverse dynamics: " + std::to_string(times.size()) +
                         " sample times against " +
                         std::to_string(germs.size()) + " germs");
    if (times.empty())
        throw grid_error("inverse dynamics on an empty grid");
    Trajectory traj;
    traj.dim = sys.dim;
    traj.t = times;
    const std::size_t m = static_cast<std::size_t>(sys.dim);
    const std::size_t n = times.size();
    traj.x.resize(n * m);
    traj.v.resize(n * m);
    traj.p.resize(n * m);
    traj.f.resize(n * m);
    for (std::size_t row = 0; row < n; ++row) {
        const SecondTangent &s = germs[row];
        if (s.x.size() != m || s.v.size() != m || s.a.size() != m)
            throw grid_error("inverse dynamics: germ dimension mismatch");
        const Covector zeta = euler_lagrange(sys, s);
        const Covector eta = legendre(sys, TangentVector{s.x, s.v});
        for (std::size_t k = 0; k < m; ++k) {
            traj.x[traj.index(row, static_cast<int>(k))] = s.x[k];
            traj.v[traj.index(row, static_cast<int>(k))] = s.v[k];
            traj.p[traj.index(row, static_cast<int>(k))] = eta.p[k];
            traj.f[traj.index(row, static_cast<int>(k))] = zeta.p[k];
        }
    }
    return traj;
}

/// Convenience overload: sample a desired expression path on the uniform grid
/// [t0, t1] with step dt and recover the force schedule along it.
inline Trajectory inverse_dynamics(const LagrangianSystem &sys,
                                   const DesiredPath &path, double t0,
                                   double t1, double dt) {
    if (path.dim() != sys.dim)
        throw config_error("desired.path",
                           "path dimension does not match the system");
    const std::size_t n = detail::grid_samples(t0, t1, dt);
    Vec times(n);
    std::vector<SecondTangent> germs;
    germs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        times[k] = t0 + static_cast<double>(k) * dt;
        germs.push_back(path.at(times[k]));
    }
    return inverse_dynamics(sys, times, germs);
}

} // namespace fmech
