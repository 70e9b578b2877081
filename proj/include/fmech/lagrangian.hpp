// fmech — Lagrangian picture
// The Euler–Lagrange map, the Legendre map, the acceleration solve, the
// dynamics-set membership residual, and the identity that ties the force-level
// description to the bundle maps of the α route.
//
// Conventions: the dynamics is generated by the 1-form λ = dL − ρ on TM.
// Along a second-order germ (x, ẋ, ẍ) the Euler–Lagrange covector is
//   ζ_κ = Σ_λ [∂²L/∂ẋ^κ∂x^λ · ẋ^λ + ∂²L/∂ẋ^κ∂ẋ^λ · ẍ^λ] − ∂L/∂x^κ + ρ_κ,
// i.e. the external force needed to make the germ a motion of the system.
#pragma once

#include <cstddef>
#include <vector>

#include <fmech/bundle.hpp>
#include <fmech/errors.hpp>
#include <fmech/expr.hpp>
#include <fmech/linalg.hpp>
#include <fmech/system.hpp>

namespace fmech {

/// Condition-estimate threshold above which the velocity Hessian is treated
/// as numerically singular (hyperregularity failure).
inline constexpr double kMassConditionLimit = 1e12;

/// Legendre map: (x, ẋ) ↦ (x, p) with p_λ = ∂L/∂ẋ^λ. Independent of ρ, which
/// is vertical and therefore never feeds the velocity gradient.
inline Covector legendre(const LagrangianSystem &sys, const TangentVector &u) {
    return {u.x, grad_v(sys.L, sys.at(u.x, u.v))};
}

/// Euler–Lagrange map along a second-order germ: returns the force covector ζ
/// with d/dt(∂L/∂ẋ) − ∂L/∂x + ρ = ζ, the time derivative expanded by the
/// chain rule through the two Hessian blocks.
inline Covector euler_lagrange(const LagrangianSystem &sys,
                               const SecondTangent &s) {
    const EvalPoint pt = sys.at(s.x, s.v);
    const Mat wvv = hessian_vv(sys.L, pt);
    const Mat wvx = hessian_vx(sys.L, pt);
    const Vec gx = grad_x(sys.L, pt);
    const Vec rho = sys.rho_at(pt);

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec zeta(m);
    for (std::size_t k = 0; k < m; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < m; ++l)
            sum += wvx(static_cast<int>(k), static_cast<int>(l)) * s.v[l] +
                   wvv(static_cast<int>(k), static_cast<int>(l)) * s.a[l];
        zeta[k] = sum - gx[k] + rho[k];
    }
    return {s.x, zeta};
}

/// Invert the Euler–Lagrange map for the acceleration: given (x, ẋ) and an
/// applied force f, return the germ (x, ẋ, ẍ) with euler_lagrange = f.
/// Refuses when the velocity Hessian is numerically singular.
inline SecondTangent solve_accel(const LagrangianSystem &sys,
                                 const TangentVector &u, const Covector &f) {
    detail::require_same_base(f.x, u.x, "solve_accel");
    const EvalPoint pt = sys.at(u.x, u.v);
    const Mat wvv = hessian_vv(sys.L, pt);
    const double cond = condition_inf(wvv);
    if (!(cond < kMassConditionLimit))
        throw singular_mass_matrix_error(cond);

    const Mat wvx = hessian_vx(sys.L, pt);
    const Vec gx = grad_x(sys.L, pt);
    const Vec rho = sys.rho_at(pt);

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < m; ++l)
            sum += wvx(static_cast<int>(k), static_cast<int>(l)) * u.v[l];
        rhs[k] = f.p[k] + gx[k] - rho[k] - sum;
    }
    return {u.x, u.v, Lu(wvv).solve(rhs)};
}

/// Membership residual of the free dynamics set D₀ ⊂ TT*M: the difference
/// between α(w) and λ = dL − ρ over the TM point (x, ẋ) of w, returned as the
/// 2m-tuple (ṗ_κ − ∂L/∂x^κ + ρ_κ ; p_κ − ∂L/∂ẋ^κ). Zero iff w ∈ D₀.
inline Vec d0_residual(const LagrangianSystem &sys, const TTStarPoint &w) {
    const EvalPoint pt = sys.at(w.x, w.v);
    const Vec gx = grad_x(sys.L, pt);
    const Vec gv = grad_v(sys.L, pt);
    const Vec rho = sys.rho_at(pt);

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec res(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
        res[k] = w.pdot[k] - gx[k] + rho[k];
        res[m + k] = w.p[k] - gv[k];
    }
    return res;
}

/// Tangent prolongation of the Legendre map along a germ: the TT*M point
/// (x, p = ∂L/∂ẋ, ẋ, ṗ) with ṗ expanded by the chain rule through the
/// Hessian blocks (no finite differencing).
inline TTStarPoint legendre_prolongation(const LagrangianSystem &sys,
                                         const SecondTangent &s) {
    const EvalPoint pt = sys.at(s.x, s.v);
    const Vec p = grad_v(sys.L, pt);
    const Mat wvv = hessian_vv(sys.L, pt);
    const Mat wvx = hessian_vx(sys.L, pt);

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec pdot(m);
    for (std::size_t k = 0; k < m; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < m; ++l)
            sum += wvx(static_cast<int>(k), static_cast<int>(l)) * s.v[l] +
                   wvv(static_cast<int>(k), static_cast<int>(l)) * s.a[l];
        pdot[k] = sum;
    }
    return {s.x, p, s.v, pdot};
}

/// The λ coordinates over (x, ẋ): the T*TM point (x, ẋ; ∂L/∂x − ρ, ∂L/∂ẋ).
inline TStarTPoint lambda_form(const LagrangianSystem &sys,
                               const TangentVector &u) {
    const EvalPoint pt = sys.at(u.x, u.v);
    const Vec gx = grad_x(sys.L, pt);
    const Vec gv = grad_v(sys.L, pt);
    const Vec rho = sys.rho_at(pt);
    Vec a(static_cast<std::size_t>(sys.dim));
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] = gx[k] - rho[k];
    return {u.x, u.v, a, gv};
}

/// Off-shell identity residual: shifting the prolonged Legendre lift by the
/// Euler–Lagrange force must land exactly on α⁻¹ of λ, for EVERY germ —
/// solution or not. Returns the 2m-tuple of (ṗ-slot ; p-slot) differences.
inline Vec tulczyjew_identity_residual(const LagrangianSystem &sys,
                                       const SecondTangent &s) {
    const TTStarPoint lifted = legendre_prolongation(sys, s);
    const Covector force = euler_lagrange(sys, s);
    const TTStarPoint lhs = chi(force, lifted);
    const TTStarPoint rhs = alpha_inv(lambda_form(sys, {s.x, s.v}));

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    Vec res(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
        res[k] = lhs.pdot[k] - rhs.pdot[k];
        res[m + k] = lhs.p[k] - rhs.p[k];
    }
    return res;
}

} // namespace fmech
