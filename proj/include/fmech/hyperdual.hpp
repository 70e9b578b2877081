// fmech — hyper-dual arithmetic
// Truncated second-order Taylor numbers carrying a value, two independent
// first-order coefficients, and one mixed second-order coefficient.
//
// An element represents f evaluated on a two-parameter probe
//   (s, t) ↦ f(q + s·u + t·w)
// truncated past first order in each parameter:
//   val = f,  d1 = D_u f,  d2 = D_w f,  d12 = D_u D_w f.
// Arithmetic on these 4-tuples is the exact ring arithmetic of
// R[s,t]/(s², t²), so first and mixed second derivatives come out exact to
// rounding — no truncation error, no step-size choice.
#pragma once

#include <cmath>
#include <cstdlib>

#include <fmech/errors.hpp>

namespace fmech {

/// Second-order truncated Taylor number with one mixed channel.
struct HyperDual2 {
    double val{0.0}; ///< function value
    double d1{0.0};  ///< first-order coefficient along probe direction u
    double d2{0.0};  ///< first-order coefficient along probe direction w
    double d12{0.0}; ///< mixed second-order coefficient D_u D_w

    constexpr HyperDual2() = default;
    constexpr HyperDual2(double v) : val(v) {}
    constexpr HyperDual2(double v, double a, double b, double ab)
        : val(v), d1(a), d2(b), d12(ab) {}
};

// ---------------------------------------------------------------------------
// Ring operations
// ---------------------------------------------------------------------------

constexpr HyperDual2 operator+(const HyperDual2 &a, const HyperDual2 &b) {
    return {a.val + b.val, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
}

constexpr HyperDual2 operator-(const HyperDual2 &a, const HyperDual2 &b) {
    return {a.val - b.val, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
}

constexpr HyperDual2 operator-(const HyperDual2 &a) {
    return {-a.val, -a.d1, -a.d2, -a.d12};
}

/// Product: the Leibniz expansion of D_u D_w (f·g), exact in the quotient ring.
constexpr HyperDual2 operator*(const HyperDual2 &a, const HyperDual2 &b) {
    return {a.val * b.val,
            a.val * b.d1 + a.d1 * b.val,
            a.val * b.d2 + a.d2 * b.val,
            a.val * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.val};
}

/// Multiplicative inverse. Precondition: val != 0 (callers guard and attach
/// expression context; this throws a bare domain_error as a backstop).
inline HyperDual2 inverse(const HyperDual2 &a) {
    if (a.val == 0.0)
        throw domain_error("division by zero", "<inverse>");
    const double iv = 1.0 / a.val;
    const double iv2 = iv * iv;
    return {iv, -a.d1 * iv2, -a.d2 * iv2,
            2.0 * a.d1 * a.d2 * iv2 * iv - a.d12 * iv2};
}

inline HyperDual2 operator/(const HyperDual2 &a, const HyperDual2 &b) {
    return a * inverse(b);
}

// Mixed-mode convenience overloads.
constexpr HyperDual2 operator+(double a, const HyperDual2 &b) { return HyperDual2(a) + b; }
constexpr HyperDual2 operator+(const HyperDual2 &a, double b) { return a + HyperDual2(b); }
constexpr HyperDual2 operator-(double a, const HyperDual2 &b) { return HyperDual2(a) - b; }
constexpr HyperDual2 operator-(const HyperDual2 &a, double b) { return a - HyperDual2(b); }
constexpr HyperDual2 operator*(double a, const HyperDual2 &b) { return HyperDual2(a) * b; }
constexpr HyperDual2 operator*(const HyperDual2 &a, double b) { return a * HyperDual2(b); }
inline HyperDual2 operator/(double a, const HyperDual2 &b) { return HyperDual2(a) / b; }
constexpr HyperDual2 operator/(const HyperDual2 &a, double b) {
    return {a.val / b, a.d1 / b, a.d2 / b, a.d12 / b};
}

// ---------------------------------------------------------------------------
// Smooth function lift
// ---------------------------------------------------------------------------

/// Compose a smooth scalar function through a hyper-dual argument given its
/// value f, first derivative fp, and second derivative fpp at u.val:
///   (f∘u).d12 = f'·u.d12 + f''·u.d1·u.d2   (chain + product rule).
constexpr HyperDual2 lift(double f, double fp, double fpp, const HyperDual2 &u) {
    return {f, fp * u.d1, fp * u.d2, fp * u.d12 + fpp * u.d1 * u.d2};
}

inline HyperDual2 sin(const HyperDual2 &u) {
    const double s = std::sin(u.val), c = std::cos(u.val);
    return lift(s, c, -s, u);
}

inline HyperDual2 cos(const HyperDual2 &u) {
    const double s = std::sin(u.val), c = std::cos(u.val);
    return lift(c, -s, -c, u);
}

inline HyperDual2 exp(const HyperDual2 &u) {
    const double e = std::exp(u.val);
    return lift(e, e, e, u);
}

/// Natural logarithm. Precondition: u.val > 0.
inline HyperDual2 ln(const HyperDual2 &u) {
    if (u.val <= 0.0)
        throw domain_error("ln of nonpositive value", "<ln>");
    const double iv = 1.0 / u.val;
    return lift(std::log(u.val), iv, -iv * iv, u);
}

/// Square root. Precondition: u.val > 0 (the derivative is singular at 0).
inline HyperDual2 sqrt(const HyperDual2 &u) {
    if (u.val <= 0.0)
        throw domain_error("sqrt of nonpositive value", "<sqrt>");
    const double r = std::sqrt(u.val);
    return lift(r, 0.5 / r, -0.25 / (r * u.val), u);
}

/// Power with a constant real exponent. Integer exponents (|c| ≤ 64) use exact
/// binary exponentiation in the quotient ring, which is valid for any base;
/// non-integer exponents require a strictly positive base.
inline HyperDual2 pow(const HyperDual2 &u, double c) {
    if (c == std::rint(c) && std::abs(c) <= 64.0) {
        long n = std::lrint(c);
        const bool negative = n < 0;
        n = std::labs(n);
        HyperDual2 acc(1.0), base = u;
        while (n > 0) {
            if (n & 1)
                acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return negative ? inverse(acc) : acc;
    }
    if (u.val <= 0.0)
        throw domain_error("power with non-integer exponent and nonpositive base",
                           "<pow>");
    const double f = std::pow(u.val, c);
    const double fp = c * std::pow(u.val, c - 1.0);
    const double fpp = c * (c - 1.0) * std::pow(u.val, c - 2.0);
    return lift(f, fp, fpp, u);
}

} // namespace fmech
