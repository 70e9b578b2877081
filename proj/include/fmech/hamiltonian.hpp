// fmech — Hamiltonian picture
// Newton inversion of the Legendre map (the fibre diffeomorphism Λ), the
// Hamiltonian H = p·Λ − L∘Λ, the Hamiltonian 1-form θ (which absorbs the
// force form), the vector field Z generating the free dynamics, and the
// residual of the forced Hamilton equations.
//
// The x-derivative of H is always computed through the envelope identity
// ∂H/∂x = −∂L/∂x ∘ Λ (differentiating H's explicit x-dependence only; the
// implicit dependence through Λ cancels because ∂L/∂ẋ = p there). Nothing is
// ever differentiated through the Newton iteration.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <fmech/bundle.hpp>
#include <fmech/errors.hpp>
#include <fmech/expr.hpp>
#include <fmech/lagrangian.hpp>
#include <fmech/linalg.hpp>
#include <fmech/system.hpp>

namespace fmech {

/// Controls for the Newton inversion of the Legendre map.
struct NewtonConfig {
    double tol{1e-12};                ///< convergence threshold, ∞-norm of residual
    int max_iter{50};                 ///< maximum accepted Newton steps
    std::optional<Vec> initial_guess; ///< starting velocity; zero if absent
};

/// Invert the Legendre map in the fibre over p.x: find ẋ with
/// ∂L/∂ẋ(x, ẋ) = p. Newton iteration on the residual with the velocity
/// Hessian as Jacobian; a step that increases the residual norm is halved
/// until it does not. `iterations_out`, when given, receives the number of
/// accepted steps.
inline TangentVector legendre_invert(const LagrangianSystem &sys,
                                     const Covector &target,
                                     const NewtonConfig &cfg = {},
                                     int *iterations_out = nullptr) {
    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec v = cfg.initial_guess ? *cfg.initial_guess : Vec(m, 0.0);

    const auto residual = [&](const Vec &vel) {
        const Vec gv = grad_v(sys.L, sys.at(target.x, vel));
        Vec r(m);
        for (std::size_t k = 0; k < m; ++k)
            r[k] = gv[k] - target.p[k];
        return r;
    };
    const auto norm_inf = [](const Vec &r) {
        double best = 0.0;
        for (double c : r)
            best = std::max(best, std::abs(c));
        return best;
    };

    Vec r = residual(v);
    double norm = norm_inf(r);
    int iterations = 0;

    while (norm > cfg.tol && iterations < cfg.max_iter) {
        const Mat jac = hessian_vv(sys.L, sys.at(target.x, v));
        const double cond = condition_inf(jac);
        if (!(cond < kMassConditionLimit))
            throw singular_mass_matrix_error(cond);

        Vec neg(m);
        for (std::size_t k = 0; k < m; ++k)
            neg[k] = -r[k];
        Vec step = Lu(jac).solve(neg);

        // Damped fallback: halve the step while it makes the residual worse.
        Vec cand(m), cand_r;
        double cand_norm = 0.0;
        for (int halvings = 0;; ++halvings) {
            for (std::size_t k = 0; k < m; ++k)
                cand[k] = v[k] + step[k];
            cand_r = residual(cand);
            cand_norm = norm_inf(cand_r);
            if ((std::isfinite(cand_norm) && cand_norm <= norm) || halvings >= 40)
                break;
            for (double &c : step)
                c *= 0.5;
        }
        v = cand;
        r = cand_r;
        norm = cand_norm;
        ++iterations;
    }

    if (iterations_out)
        *iterations_out = iterations;
    if (!(norm <= cfg.tol))
        throw no_convergence_error(iterations, norm);
    return {target.x, v};
}

/// Hamiltonian H(x, p) = p·Λ − L(x, Λ) with Λ the inverted Legendre fibre map.
inline double hamiltonian(const LagrangianSystem &sys, const Covector &p,
                          const NewtonConfig &cfg = {}) {
    const TangentVector u = legendre_invert(sys, p, cfg);
    return dot(p.p, u.v) - eval(sys.L, sys.at(u.x, u.v));
}

/// The Hamiltonian 1-form θ = θ_κ dx^κ + θ^κ dp_κ on T*M.
struct ThetaForm {
    Vec x_coeff; ///< θ_κ = ∂H/∂x^κ + ρ_κ∘Λ  (= −∂L/∂x^κ∘Λ + ρ_κ∘Λ)
    Vec p_coeff; ///< θ^κ = ∂H/∂p_κ = Λ^κ
};

/// Evaluate θ at (x, p). With ρ = 0 this is dH; in general θ = dH + Λ*ρ, so
/// the force form rides along with the differential of the energy.
inline ThetaForm theta_form(const LagrangianSystem &sys, const Covector &p,
                            const NewtonConfig &cfg = {}) {
    const TangentVector u = legendre_invert(sys, p, cfg);
    const EvalPoint pt = sys.at(u.x, u.v);
    const Vec gx = grad_x(sys.L, pt);
    const Vec rho = sys.rho_at(pt);
    Vec down(static_cast<std::size_t>(sys.dim));
    for (std::size_t k = 0; k < down.size(); ++k)
        down[k] = -gx[k] + rho[k];
    return {down, u.v};
}

/// The Hamiltonian vector field Z of the free (unforced) dynamics at (x, p):
/// the TT*M point (x, p, ẋ = Λ, ṗ = ∂L/∂x∘Λ − ρ∘Λ). Its image is exactly
/// the free dynamics set D₀.
inline TTStarPoint vector_field_Z(const LagrangianSystem &sys, const Covector &p,
                                  const NewtonConfig &cfg = {}) {
    const TangentVector u = legendre_invert(sys, p, cfg);
    const EvalPoint pt = sys.at(u.x, u.v);
    const Vec gx = grad_x(sys.L, pt);
    const Vec rho = sys.rho_at(pt);
    Vec pdot(static_cast<std::size_t>(sys.dim));
    for (std::size_t k = 0; k < pdot.size(); ++k)
        pdot[k] = gx[k] - rho[k];
    return {u.x, p.p, u.v, pdot};
}

/// Residual of the forced Hamilton equations at a force-momentum sample with
/// proposed derivatives (ẋ, ṗ):
///   (ẋ − ∂H/∂p ; ṗ − ζ + ∂H/∂x + ρ∘Λ).
/// Zero iff the sample satisfies ẋ = ∂H/∂p and ṗ = ζ − ∂H/∂x − ρ∘Λ.
inline Vec hamilton_residual(const LagrangianSystem &sys,
                             const ForceMomentumSample &sample, const Vec &pdot,
                             const Vec &xdot, const NewtonConfig &cfg = {}) {
    const TangentVector u = legendre_invert(sys, {sample.x, sample.p}, cfg);
    const EvalPoint pt = sys.at(u.x, u.v);
    const Vec gx = grad_x(sys.L, pt);
    const Vec rho = sys.rho_at(pt);

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec res(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
        res[k] = xdot[k] - u.v[k];
        res[m + k] = pdot[k] - sample.f[k] - gx[k] + rho[k];
    }
    return res;
}

} // namespace fmech
