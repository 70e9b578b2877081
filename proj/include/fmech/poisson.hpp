// fmech — Poisson picture
// The canonical Poisson bracket on T*M, its symbolic (AST-level) composition
// for nested brackets, and the bracket form of the forced evolution law.
//
// The numeric bracket accumulates Σ ∂F/∂x·∂G/∂p and Σ ∂G/∂x·∂F/∂p as two
// separate sums with identical term order and returns their difference, so
// swapping the arguments negates the result bitwise — antisymmetry holds
// exactly, not just to rounding.
#pragma once

#include <cstddef>

#include <fmech/bundle.hpp>
#include <fmech/expr.hpp>
#include <fmech/hamiltonian.hpp>
#include <fmech/linalg.hpp>
#include <fmech/system.hpp>

namespace fmech {

/// A function on T*M: an expression over (x1..xm, p1..pm, params).
using ObservableExpr = Expression;

/// Canonical bracket {F, G} = Σ_κ (∂F/∂x^κ ∂G/∂p_κ − ∂G/∂x^κ ∂F/∂p_κ)
/// evaluated at the phase-space point `at`.
inline double poisson_bracket(const ObservableExpr &F, const ObservableExpr &G,
                              const Covector &at, const ParamMap &params = {}) {
    EvalPoint pt;
    pt.x = at.x;
    pt.p = at.p;
    pt.params = params;

    const Vec fx = grad_x(F, pt), fp = grad_p(F, pt);
    const Vec gx = grad_x(G, pt), gp = grad_p(G, pt);

    double fg = 0.0, gf = 0.0;
    for (std::size_t k = 0; k < fx.size(); ++k)
        fg += fx[k] * gp[k];
    for (std::size_t k = 0; k < fx.size(); ++k)
        gf += gx[k] * fp[k];
    return fg - gf;
}

/// The bracket as a new expression: Σ_κ [∂F/∂x^κ·∂G/∂p_κ − ∂G/∂x^κ·∂F/∂p_κ]
/// with the partial derivatives taken symbolically. Lets nested brackets
/// ({F,{G,K}} and friends) stay inside second-order evaluation.
inline ObservableExpr bracket_expr(const ObservableExpr &F,
                                   const ObservableExpr &G) {
    Expression sum;
    for (int k = 1; k <= F.dim(); ++k) {
        const Expression term = expr_sub(
            expr_mul(derivative(F, VarKind::X, k), derivative(G, VarKind::P, k)),
            expr_mul(derivative(G, VarKind::X, k), derivative(F, VarKind::P, k)));
        sum = sum.empty() ? term : expr_add(sum, term);
    }
    return sum;
}

/// Residual of the bracket form of the forced evolution law for the
/// observable F at a force-momentum sample with proposed rates (ẋ, ṗ):
///   dF/dt − {F, H} − ∂F/∂p·(ζ − ρ∘Λ)
/// with dF/dt expanded as ∂F/∂x·ẋ + ∂F/∂p·ṗ. Zero for every F iff the
/// sample satisfies the forced dynamics. {F, H} is evaluated through
/// ∂H/∂p = Λ and the envelope identity ∂H/∂x = −∂L/∂x∘Λ.
inline double evolution_residual(const LagrangianSystem &sys,
                                 const ObservableExpr &F,
                                 const ForceMomentumSample &sample,
                                 const Vec &xdot, const Vec &pdot,
                                 const NewtonConfig &cfg = {}) {
    const TangentVector u = legendre_invert(sys, {sample.x, sample.p}, cfg);
    const EvalPoint state = sys.at(u.x, u.v);
    const Vec gxL = grad_x(sys.L, state);
    const Vec rho = sys.rho_at(state);

    EvalPoint pt;
    pt.x = sample.x;
    pt.p = sample.p;
    pt.params = sys.params;
    const Vec fx = grad_x(F, pt), fp = grad_p(F, pt);

    const std::size_t m = static_cast<std::size_t>(sys.dim);
    double dfdt = 0.0, bracket_fh = 0.0, forcing = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        dfdt += fx[k] * xdot[k] + fp[k] * pdot[k];
        // {F,H} = Σ ∂F/∂x·∂H/∂p − ∂H/∂x·∂F/∂p with ∂H/∂p = Λ, ∂H/∂x = −∂L/∂x.
        bracket_fh += fx[k] * u.v[k] + gxL[k] * fp[k];
        forcing += fp[k] * (sample.f[k] - rho[k]);
    }
    return dfdt - bracket_fh - forcing;
}

} // namespace fmech
