// fmech — variational principle with boundary momenta
// Numerical verification of the first-variation identity for forced systems:
// for a motion (x(t), ζ(t)) and any smooth variation δξ (arbitrary at the
// endpoints),
//   ∫ Σ_κ [(∂L/∂x^κ − ρ_κ)·δξ^κ + ∂L/∂ẋ^κ·δξ̇^κ] dt
//     = −∫ Σ_κ ζ_κ·δξ^κ dt + ⟨η(b), δξ(b)⟩ − ⟨η(a), δξ(a)⟩,
// with η the boundary momenta. The left side pairs the force form λ = dL − ρ
// with the tangent lift of the variation; the boundary terms are what
// distinguishes this principle from the fixed-endpoint one.
//
// All integrals are composite-Simpson on the trajectory's own grid (trapezoid
// on a trailing odd panel), with compensated accumulation so the quadrature
// error — not the summation — dominates the residual.
#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmech/errors.hpp>
#include <fmech/expr.hpp>
#include <fmech/integrate.hpp>
#include <fmech/lagrangian.hpp>
#include <fmech/system.hpp>

namespace fmech {

// ───────────────────────── variations ─────────────────────────

/// A smooth infinitesimal variation of a motion: one expression δξ^κ(t) per
/// coordinate, arbitrary at the endpoints. The time derivative δξ̇ comes from
/// the second-order arithmetic, never from differencing.
struct Variation {
    std::vector<Expression> delta; ///< δξ_1(t)..δξ_m(t)
    ParamMap params;

    int dim() const { return static_cast<int>(delta.size()); }

    /// Sample (δξ(t), δξ̇(t)).
    std::pair<Vec, Vec> at(double t) const {
        EvalPoint pt;
        pt.t = t;
        pt.params = params;
        const std::size_t m = delta.size();
        Vec value(m), rate(m);
        for (std::size_t k = 0; k < m; ++k) {
            const TimeJet jet = time_jet(delta[k], pt);
            value[k] = jet.value;
            rate[k] = jet.first;
        }
        return {value, rate};
    }
};

/// Build a variation from expression texts in `t`; exactly `dim` texts.
inline Variation make_variation(int dim, const std::vector<std::string> &texts,
                                const ParamMap &params = {}) {
    if (dim < 1)
        throw config_error("system.dim", "must be a positive integer");
    if (static_cast<int>(texts.size()) != dim)
        throw config_error("variation.delta",
                           "expected " + std::to_string(dim) +
                               " component expressions, got " +
                               std::to_string(texts.size()));
    std::set<std::string> names;
    for (const auto &kv : params)
        names.insert(kv.first);
    Variation var;
    var.params = params;
    var.delta.reserve(texts.size());
    for (const std::string &text : texts)
        var.delta.push_back(parse(text, dim, names, VarPolicy::time_only()));
    return var;
}

// ───────────────────────── quadrature ─────────────────────────

namespace detail {

/// Compensated (Neumaier) accumulator: the summation error stays at one
/// rounding of the final value instead of growing with the sample count.
struct CompensatedSum {
    double sum = 0.0, carry = 0.0;

    void add(double x) {
        const double next = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - next) + x;
        else
            carry += (x - next) + sum;
        sum = next;
    }

    double value() const { return sum + carry; }
};

} // namespace detail

/// Composite Simpson quadrature of uniformly spaced samples with step dt;
/// a trailing odd panel falls back to the trapezoid rule. O(dt⁴) for smooth
/// integrands (the trapezoid tail only arises on odd panel counts).
inline double simpson_integrate(const Vec &samples, double dt) {
    const std::size_t n = samples.size();
    if (n < 2)
        throw grid_error("quadrature needs at least two samples, got " +
                         std::to_string(n));
    const std::size_t panels = n - 1;
    const std::size_t pairs = panels / 2;
    detail::CompensatedSum acc;
    for (std::size_t j = 0; j < pairs; ++j) {
        const std::size_t i = 2 * j;
        acc.add(dt / 3.0 * (samples[i] + 4.0 * samples[i + 1] + samples[i + 2]));
    }
    if (panels % 2 == 1)
        acc.add(0.5 * dt * (samples[n - 2] + samples[n - 1]));
    return acc.value();
}

// ───────────────────────── the action ─────────────────────────

/// The action ∫ L(x(t), ẋ(t)) dt along a trajectory. Defined only in the
/// potential case: with a nonzero force form there is no function whose
/// differential generates the dynamics, so the request is refused.
inline double action(const LagrangianSystem &sys, const Trajectory &traj) {
    if (!sys.potential)
        throw non_potential_system_error(
            "the action integral is not defined when the force form is "
            "nonzero");
    if (traj.samples() < 2)
        throw grid_error("action needs at least two trajectory samples");
    const double dt = traj.t[1] - traj.t[0];
    Vec integrand(traj.samples());
    for (std::size_t i = 0; i < traj.samples(); ++i)
        integrand[i] = eval(sys.L, sys.at(traj.x_row(i), traj.v_row(i)));
    return simpson_integrate(integrand, dt);
}

// ───────────────────────── the first-variation residual ─────────────────────────

/// Left side minus right side of the variational identity, both sides by
/// composite Simpson on the trajectory grid. On a true motion the result is
/// pure quadrature error, O(dt⁴)·‖variation‖; on a non-solution it measures
/// the dynamics defect weighted by the variation.
inline double principle_residual(const LagrangianSystem &sys,
                                 const Trajectory &traj,
                                 const ForceSchedule &sched,
                                 const Variation &var) {
    if (traj.dim != sys.dim)
        throw grid_error("trajectory dimension does not match the system");
    if (sched.dim() != sys.dim)
        throw grid_error("schedule dimension does not match the system");
    if (var.dim() != sys.dim)
        throw grid_error("variation dimension does not match the system");
    if (traj.samples() < 2)
        throw grid_error("the residual needs at least two trajectory samples");

    const std::size_t n = traj.samples();
    const std::size_t m = static_cast<std::size_t>(sys.dim);
    const double dt = traj.t[1] - traj.t[0];

    Vec lhs(n), work(n);
    std::pair<Vec, Vec> first_var, last_var;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = traj.t[i];
        const EvalPoint pt = sys.at(traj.x_row(i), traj.v_row(i));
        const Vec gx = grad_x(sys.L, pt);
        const Vec gv = grad_v(sys.L, pt);
        const Vec rho = sys.rho_at(pt);
        const Vec zeta = sched.at(t);
        const auto [dx, dv] = var.at(t);
        double along = 0.0, forced = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            along += (gx[k] - rho[k]) * dx[k] + gv[k] * dv[k];
            forced += zeta[k] * dx[k];
        }
        lhs[i] = along;
        work[i] = forced;
        if (i == 0)
            first_var = {dx, dv};
        if (i + 1 == n)
            last_var = {dx, dv};
    }

    const auto [eta_a, eta_b] = boundary_momenta(sys, traj);
    const double boundary =
        dot(eta_b.p, last_var.first) - dot(eta_a.p, first_var.first);
    return simpson_integrate(lhs, dt) -
           (-simpson_integrate(work, dt) + boundary);
}

} // namespace fmech
