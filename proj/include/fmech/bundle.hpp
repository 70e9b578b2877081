// fmech — iterated bundle charts and canonical maps
// Coordinate records for the tangent/cotangent towers over an m-dimensional
// configuration space and the canonical maps between them: the involution
// κ^{1,1}, the isomorphisms α and β, the vertical endomorphisms F(k;n), the
// vertical lift μ and force shift χ, the pairings, and the Liouville-form
// contractions.
//
// Everything is a plain record in one global chart — the scenarios of this
// library live on ℝ^m, so no atlas or transition machinery is needed. Fields
// follow the variational reading: a TTPoint carries a base point with its
// velocity (x, v) and an attached variation with its velocity (dx, dv).
#pragma once

#include <cstddef>
#include <vector>

#include <fmech/errors.hpp>
#include <fmech/linalg.hpp>

namespace fmech {

// ---------------------------------------------------------------------------
// Chart records (all fields are m-tuples)
// ---------------------------------------------------------------------------

/// Point of TM: (x^κ, ẋ^λ).
struct TangentVector {
    Vec x, v;
    bool operator==(const TangentVector &) const = default;
};

/// Point of T*M: (x^κ, p_λ). Also used for force covectors.
struct Covector {
    Vec x, p;
    bool operator==(const Covector &) const = default;
};

/// Point of T²M (second tangent bundle): (x^κ, ẋ^λ, ẍ^μ).
struct SecondTangent {
    Vec x, v, a;
    bool operator==(const SecondTangent &) const = default;
};

/// Point of TTM: (x^κ, ẋ^λ, δx^μ, δẋ^ν).
struct TTPoint {
    Vec x, v, dx, dv;
    bool operator==(const TTPoint &) const = default;
};

/// Point of TT*M: (x^κ, p_λ, ẋ^μ, ṗ_ν).
struct TTStarPoint {
    Vec x, p, v, pdot;
    bool operator==(const TTStarPoint &) const = default;
};

/// Point of T*TM: a covector (a_μ, b_ν) attached at the TM point (x^κ, ẋ^λ).
struct TStarTPoint {
    Vec x, v, a, b;
    bool operator==(const TStarTPoint &) const = default;
};

/// Point of T*T*M: a covector (y_μ, z^ν) attached at the T*M point (x^κ, p_λ).
struct TStarTStarPoint {
    Vec x, p, y, z;
    bool operator==(const TStarTStarPoint &) const = default;
};

/// Point of TT²M: (x, ẋ, ẍ, δx, δẋ, δẍ).
struct TT2Point {
    Vec x, v, a, dx, dv, da;
    bool operator==(const TT2Point &) const = default;
};

/// Force and momentum covectors over one shared base point — the
/// force-momentum phase space (a fibre product of two copies of T*M).
struct ForceMomentumSample {
    Vec x, f, p;
    bool operator==(const ForceMomentumSample &) const = default;
};

/// Coordinate increments (δx, δp, δẋ, δṗ) naming a tangent direction at a
/// TT*M point, for evaluating 1-forms on TT*M without a fourth bundle level.
struct TTStarIncrement {
    Vec dx, dp, dv, dpdot;
};

namespace detail {

inline void require_same_base(const Vec &a, const Vec &b, const char *what) {
    if (a != b)
        throw base_mismatch_error(std::string("base coordinates differ in ") +
                                  what);
}

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

} // namespace detail

// ---------------------------------------------------------------------------
// Canonical maps
// ---------------------------------------------------------------------------

/// Canonical involution κ^{1,1}: TTM → TTM, (x, ẋ, δx, δẋ) ↦ (x, δx, ẋ, δẋ).
/// Swaps "velocity of the variation" with "variation of the velocity".
inline TTPoint kappa11(const TTPoint &w) { return {w.x, w.dx, w.v, w.dv}; }

/// Isomorphism α: TT*M → T*TM, (x, p, ẋ, ṗ) ↦ (x, ẋ; a=ṗ, b=p).
inline TStarTPoint alpha(const TTStarPoint &z) {
    return {z.x, z.v, z.pdot, z.p};
}

/// Inverse of α: (x, ẋ; a, b) ↦ (x, p=b, ẋ, ṗ=a).
inline TTStarPoint alpha_inv(const TStarTPoint &s) {
    return {s.x, s.b, s.v, s.a};
}

/// Isomorphism β: TT*M → T*T*M, (x, p, ẋ, ṗ) ↦ (x, p; y=ṗ, z=−ẋ).
/// β is the musical map of the canonical symplectic form ω = dp_κ ∧ dx^κ.
inline TStarTStarPoint beta(const TTStarPoint &z) {
    Vec neg = z.v;
    for (double &c : neg)
        c = -c;
    return {z.x, z.p, z.pdot, neg};
}

/// Vertical endomorphism F(1;1): TTM → TTM, (x, ẋ, δx, δẋ) ↦ (x, ẋ, 0, δx).
inline TTPoint F11(const TTPoint &w) {
    return {w.x, w.v, detail::zeros(w.x.size()), w.dx};
}

/// Half-shift F(2;1): TT²M → TT²M, (x, ẋ, ẍ, δx, δẋ, δẍ) ↦ (x, ẋ, ẍ, 0, δx, 2δẋ).
/// The factor 2 on the last slot is forced by the composition law
/// F(2;1)∘F(2;1) = F(2;2) together with the F(2;2) law below.
inline TT2Point F21(const TT2Point &w) {
    Vec dbl = w.dv;
    for (double &c : dbl)
        c *= 2.0;
    return {w.x, w.v, w.a, detail::zeros(w.x.size()), w.dx, dbl};
}

/// Full shift F(2;2): TT²M → TT²M, (x, ẋ, ẍ, δx, δẋ, δẍ) ↦ (x, ẋ, ẍ, 0, 0, 2δx).
inline TT2Point F22(const TT2Point &w) {
    Vec dbl = w.dx;
    for (double &c : dbl)
        c *= 2.0;
    const Vec zero = detail::zeros(w.x.size());
    return {w.x, w.v, w.a, zero, zero, dbl};
}

/// Canonical injection T(1): T²M → TTM, (x, ẋ, ẍ) ↦ (x, ẋ, ẋ, ẍ) — a second
/// tangent vector regarded as a holonomic element of TTM.
inline TTPoint tangent_lift_T1(const SecondTangent &s) {
    return {s.x, s.v, s.v, s.a};
}

/// Vertical lift μ: a force covector f over the base point of the momentum
/// covector η becomes the vertical vector (x, η, ẋ=0, ṗ=f) ∈ TT*M.
inline TTStarPoint mu(const Covector &f, const Covector &eta) {
    detail::require_same_base(f.x, eta.x, "mu");
    return {eta.x, eta.p, detail::zeros(eta.x.size()), f.p};
}

/// Force shift χ: subtracts a force covector from the ṗ slot of a TT*M point,
/// (f, (x, p, ẋ, ṗ)) ↦ (x, p, ẋ, ṗ − f).
inline TTStarPoint chi(const Covector &f, const TTStarPoint &w) {
    detail::require_same_base(f.x, w.x, "chi");
    Vec shifted = w.pdot;
    for (std::size_t i = 0; i < shifted.size(); ++i)
        shifted[i] -= f.p[i];
    return {w.x, w.p, w.v, shifted};
}

// ---------------------------------------------------------------------------
// Pairings
// ---------------------------------------------------------------------------

/// ⟨f, u⟩ = Σ f_κ ẋ^κ over a shared base point of M.
inline double pair_T(const Covector &f, const TangentVector &u) {
    detail::require_same_base(f.x, u.x, "pair_T");
    return dot(f.p, u.v);
}

/// ⟨s, w⟩ = Σ (a_κ δx^κ + b_κ δẋ^κ) over a shared base point (x, ẋ) of TM.
inline double pair_TT(const TStarTPoint &s, const TTPoint &w) {
    detail::require_same_base(s.x, w.x, "pair_TT");
    detail::require_same_base(s.v, w.v, "pair_TT");
    return dot(s.a, w.dx) + dot(s.b, w.dv);
}

/// Tangent pairing ⟨⟨z, w⟩⟩ = Σ (ṗ_κ δx^κ + p_κ δẋ^κ): the tangent functor
/// applied to ⟨·,·⟩, defined when both arguments sit over the same TM point
/// (x, ẋ). For lifts of curves η(t), δξ(t) it returns d/dt ⟨η, δξ⟩.
inline double tangent_pair(const TTStarPoint &z, const TTPoint &w) {
    detail::require_same_base(z.x, w.x, "tangent_pair");
    detail::require_same_base(z.v, w.v, "tangent_pair");
    return dot(z.pdot, w.dx) + dot(z.p, w.dv);
}

/// ⟨b, w⟩ = Σ (y_κ ẋ^κ + z^κ ṗ_κ) over a shared base point (x, p) of T*M.
inline double pair_TsTs(const TStarTStarPoint &b, const TTStarPoint &w) {
    detail::require_same_base(b.x, w.x, "pair_TsTs");
    detail::require_same_base(b.p, w.p, "pair_TsTs");
    return dot(b.y, w.v) + dot(b.z, w.pdot);
}

// ---------------------------------------------------------------------------
// Liouville form and its lifts on TT*M
// ---------------------------------------------------------------------------

/// The Liouville 1-form θ = p_κ dx^κ of T*M evaluated on w ∈ TT*M regarded as
/// a tangent vector at its own base point: θ(w) = Σ p_κ ẋ^κ.
inline double liouville_theta(const TTStarPoint &w) { return dot(w.p, w.v); }

/// The tautological function G = Σ p_κ ẋ^κ on TT*M (the contraction i_T θ).
inline double G_M(const TTStarPoint &w) { return dot(w.p, w.v); }

/// Tangent lift dT θ = ṗ_κ dx^κ + p_κ dẋ^κ, a 1-form on TT*M, evaluated at w
/// on the direction d: Σ (ṗ_κ δx^κ + p_κ δẋ^κ).
inline double dT_theta(const TTStarPoint &w, const TTStarIncrement &d) {
    return dot(w.pdot, d.dx) + dot(w.p, d.dv);
}

/// Contraction i_T ω = ṗ_κ dx^κ − ẋ^κ dp_κ of the lifted symplectic form,
/// evaluated at w on the direction d: Σ (ṗ_κ δx^κ − ẋ^κ δp_κ).
/// Satisfies dT θ − i_T ω = dG on every direction.
inline double iT_omega(const TTStarPoint &w, const TTStarIncrement &d) {
    return dot(w.pdot, d.dx) - dot(w.v, d.dp);
}

} // namespace fmech
