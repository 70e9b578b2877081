// Tests for the bundle charts and canonical maps: the pinned coordinate laws,
// involution/bijection round trips, vertical-endomorphism composition laws,
// the duality between α and κ, the β-symplectic identity, and the
// second-order κ shuffles.
#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <random>

#include <fmech/bundle.hpp>

using namespace fmech;
using Catch::Matchers::WithinAbs;

namespace {

std::mt19937 rng(20240517u);

Vec random_vec(std::size_t m) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    Vec r(m);
    for (double &c : r)
        c = dist(rng);
    return r;
}

TTPoint random_ttpoint(std::size_t m) {
    return {random_vec(m), random_vec(m), random_vec(m), random_vec(m)};
}

TTStarPoint random_ttstar(std::size_t m) {
    return {random_vec(m), random_vec(m), random_vec(m), random_vec(m)};
}

// Second-order κ shuffles, used only by this suite to validate chart
// consistency of the TT² record against an independent T²T chart.
struct T2TPoint {
    Vec x, xdot, xp, xdotp, xpp, xdotpp;
    bool operator==(const T2TPoint &) const = default;
};

TT2Point kappa21(const T2TPoint &w) {
    return {w.x, w.xp, w.xpp, w.xdot, w.xdotp, w.xdotpp};
}

T2TPoint kappa12(const TT2Point &w) {
    return {w.x, w.dx, w.v, w.dv, w.a, w.da};
}

// Bundle projections used by the commutation check.
TTPoint project_T2T_to_TT(const T2TPoint &w) { // drops the second-order slots
    return {w.x, w.xdot, w.xp, w.xdotp};
}

TTPoint project_TT2_to_TT(const TT2Point &w) { // tangent map of (x,ẋ,ẍ)↦(x,ẋ)
    return {w.x, w.v, w.dx, w.dv};
}

} // namespace

TEST_CASE("kappa11 swaps the middle slots") {
    const TTPoint w{{1.0}, {2.0}, {3.0}, {4.0}};
    const TTPoint k = kappa11(w);
    REQUIRE(k == TTPoint{{1.0}, {3.0}, {2.0}, {4.0}});
}

TEST_CASE("kappa11 fixes points with v = dx and is an involution") {
    const TTPoint fixed{{0.5, 1.0}, {2.0, -3.0}, {2.0, -3.0}, {7.0, 0.25}};
    REQUIRE(kappa11(fixed) == fixed);

    for (int trial = 0; trial < 1000; ++trial) {
        const TTPoint w = random_ttpoint(3);
        REQUIRE(kappa11(kappa11(w)) == w);
    }
}

TEST_CASE("alpha coordinate law and round trip with alpha_inv") {
    const TTStarPoint z{{0.0}, {5.0}, {2.0}, {7.0}};
    const TStarTPoint s = alpha(z);
    REQUIRE(s == TStarTPoint{{0.0}, {2.0}, {7.0}, {5.0}});
    REQUIRE(alpha_inv(s) == z);

    const TTStarPoint zero{{0.0}, {0.0}, {0.0}, {0.0}};
    REQUIRE(alpha(zero) == TStarTPoint{{0.0}, {0.0}, {0.0}, {0.0}});

    for (int trial = 0; trial < 100; ++trial) {
        const TTStarPoint r = random_ttstar(2);
        REQUIRE(alpha_inv(alpha(r)) == r);
        const TStarTPoint q{random_vec(2), random_vec(2), random_vec(2),
                            random_vec(2)};
        REQUIRE(alpha(alpha_inv(q)) == q);
    }
}

TEST_CASE("alpha preserves the underlying TM point") {
    const TTStarPoint z = random_ttstar(3);
    const TStarTPoint s = alpha(z);
    REQUIRE(s.x == z.x);
    REQUIRE(s.v == z.v);
}

TEST_CASE("beta coordinate law") {
    const TTStarPoint z{{0.0}, {1.0}, {2.0}, {3.0}};
    const TStarTStarPoint b = beta(z);
    REQUIRE(b == TStarTStarPoint{{0.0}, {1.0}, {3.0}, {-2.0}});

    const TTStarPoint rest{{0.4}, {1.5}, {0.0}, {0.0}};
    const TStarTStarPoint br = beta(rest);
    REQUIRE(br.y == Vec{0.0});
    REQUIRE(br.z == Vec{0.0});
    REQUIRE(br.x == rest.x);
    REQUIRE(br.p == rest.p);
}

TEST_CASE("beta realizes the symplectic form dp wedge dx") {
    // ⟨β(u), u'⟩ = ṗ(u)·ẋ(u') − ẋ(u)·ṗ(u'), antisymmetric under u ↔ u'.
    const Vec x = random_vec(3), p = random_vec(3);
    for (int trial = 0; trial < 100; ++trial) {
        TTStarPoint u{x, p, random_vec(3), random_vec(3)};
        TTStarPoint up{x, p, random_vec(3), random_vec(3)};
        const double lhs = pair_TsTs(beta(u), up);
        const double expect = dot(u.pdot, up.v) - dot(u.v, up.pdot);
        REQUIRE_THAT(lhs, WithinAbs(expect, 1e-15));
        REQUIRE_THAT(pair_TsTs(beta(up), u), WithinAbs(-lhs, 1e-15));
    }
}

TEST_CASE("vertical endomorphism coordinate laws") {
    const TTPoint w{{1.0}, {2.0}, {3.0}, {4.0}};
    REQUIRE(F11(w) == TTPoint{{1.0}, {2.0}, {0.0}, {3.0}});

    const TT2Point u{{0.5}, {1.5}, {2.5}, {1.0}, {5.0}, {9.0}};
    const TT2Point f22 = F22(u);
    REQUIRE(f22.dx == Vec{0.0});
    REQUIRE(f22.dv == Vec{0.0});
    REQUIRE(f22.da == Vec{2.0});
    REQUIRE(f22.x == u.x);
    REQUIRE(f22.v == u.v);
    REQUIRE(f22.a == u.a);
}

TEST_CASE("vertical endomorphism composition laws") {
    for (int trial = 0; trial < 200; ++trial) {
        const TTPoint w = random_ttpoint(2);
        const TTPoint ff = F11(F11(w));
        REQUIRE(ff.dx == detail::zeros(2));
        REQUIRE(ff.dv == detail::zeros(2));

        const TT2Point u{random_vec(2), random_vec(2), random_vec(2),
                         random_vec(2), random_vec(2), random_vec(2)};
        REQUIRE(F21(F21(u)) == F22(u));

        const TT2Point z1 = F22(F21(u));
        REQUIRE(z1.dx == detail::zeros(2));
        REQUIRE(z1.dv == detail::zeros(2));
        REQUIRE(z1.da == detail::zeros(2));
    }
}

TEST_CASE("second tangent vectors embed as holonomic TT points") {
    const SecondTangent s{{0.0}, {3.0}, {-1.0}};
    REQUIRE(tangent_lift_T1(s) == TTPoint{{0.0}, {3.0}, {3.0}, {-1.0}});

    const SecondTangent rest{{0.0}, {0.0}, {0.0}};
    REQUIRE(tangent_lift_T1(rest) == TTPoint{{0.0}, {0.0}, {0.0}, {0.0}});

    // Composing with F11 moves the velocity into the dv slot.
    const SecondTangent q{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    const TTPoint f = F11(tangent_lift_T1(q));
    REQUIRE(f.dx == detail::zeros(2));
    REQUIRE(f.dv == q.v);
}

TEST_CASE("mu lifts a force covector vertically") {
    const Covector f{{1.0}, {9.0}};
    const Covector eta{{1.0}, {4.0}};
    REQUIRE(mu(f, eta) == TTStarPoint{{1.0}, {4.0}, {0.0}, {9.0}});

    const Covector zero_force{{1.0}, {0.0}};
    const TTStarPoint lifted = mu(zero_force, eta);
    REQUIRE(lifted.v == Vec{0.0});
    REQUIRE(lifted.pdot == Vec{0.0});

    REQUIRE_THROWS_AS(mu(Covector{{2.0}, {9.0}}, eta), base_mismatch_error);
}

TEST_CASE("mu pairs with vertical-free variations as f dot dx") {
    const Vec x = random_vec(2);
    const Covector f{x, random_vec(2)};
    const Covector eta{x, random_vec(2)};
    const Vec delta = random_vec(2);
    // Variation with zero velocity part over the rest lift of the base point.
    const TTPoint w{x, detail::zeros(2), delta, detail::zeros(2)};
    REQUIRE_THAT(tangent_pair(mu(f, eta), w), WithinAbs(dot(f.p, delta), 1e-15));
}

TEST_CASE("chi subtracts the force from the pdot slot") {
    const Covector f{{0.0}, {2.0}};
    const TTStarPoint w{{0.0}, {1.0}, {5.0}, {7.0}};
    REQUIRE(chi(f, w) == TTStarPoint{{0.0}, {1.0}, {5.0}, {5.0}});

    const Covector nil{{0.0}, {0.0}};
    REQUIRE(chi(nil, w) == w);

    REQUIRE_THROWS_AS(chi(Covector{{1.0}, {2.0}}, w), base_mismatch_error);

    // chi(f, w) differs from w by the vertical lift mu(f, base) slotwise.
    const TTStarPoint lifted = mu(f, Covector{w.x, w.p});
    const TTStarPoint shifted = chi(f, w);
    REQUIRE(shifted.v == w.v);
    for (std::size_t i = 0; i < w.pdot.size(); ++i)
        REQUIRE(shifted.pdot[i] == w.pdot[i] - lifted.pdot[i]);
}

TEST_CASE("pairings evaluate their coordinate sums") {
    const Vec x{0.7};
    REQUIRE(pair_T(Covector{x, {3.0}}, TangentVector{x, {4.0}}) == 12.0);

    const TTStarPoint z{x, {1.0}, {2.5}, {2.0}};
    const TTPoint w{x, {2.5}, {3.0}, {4.0}};
    REQUIRE(tangent_pair(z, w) == 10.0); // 2*3 + 1*4

    const TTPoint zero2{x, {2.5}, {0.0}, {0.0}};
    REQUIRE(tangent_pair(z, zero2) == 0.0);

    const TStarTPoint s{x, {2.5}, {1.5}, {-2.0}};
    REQUIRE(pair_TT(s, w) == 1.5 * 3.0 + -2.0 * 4.0);

    REQUIRE_THROWS_AS(tangent_pair(z, TTPoint{{0.9}, {2.5}, {1.0}, {1.0}}),
                      base_mismatch_error);
    REQUIRE_THROWS_AS(tangent_pair(z, TTPoint{x, {9.9}, {1.0}, {1.0}}),
                      base_mismatch_error);
}

TEST_CASE("tangent pairing of curve lifts differentiates the pairing") {
    // η(t) = (x(t), p(t)) with x(t) = (t, 1+2t), p(t) = (3−t, t²);
    // variation δξ(t) = (2t, 1−t) along the same base curve.
    // d/dt ⟨η, δξ⟩ = d/dt [ (3−t)·2t + t²·(1−t) ] = 6 − 4t + 2t − 3t².
    const auto lift_eta = [](double t) {
        return TTStarPoint{{t, 1.0 + 2.0 * t},
                           {3.0 - t, t * t},
                           {1.0, 2.0},
                           {-1.0, 2.0 * t}};
    };
    const auto lift_var = [](double t) {
        return TTPoint{{t, 1.0 + 2.0 * t},
                       {1.0, 2.0},
                       {2.0 * t, 1.0 - t},
                       {2.0, -1.0}};
    };
    for (const double t : {0.0, 0.5, -1.25}) {
        const double expect = 6.0 - 4.0 * t + 2.0 * t - 3.0 * t * t;
        REQUIRE_THAT(tangent_pair(lift_eta(t), lift_var(t)),
                     WithinAbs(expect, 1e-14));
    }
}

TEST_CASE("duality of alpha against kappa") {
    // ⟨α(z), w⟩ = ⟨⟨z, κ(w)⟩⟩ whenever both sides are defined, which pins
    // w = (x(z), ẋ(z), ẋ(z), free).
    for (int trial = 0; trial < 1000; ++trial) {
        const TTStarPoint z = random_ttstar(3);
        const TTPoint w{z.x, z.v, z.v, random_vec(3)};
        const double lhs = pair_TT(alpha(z), w);
        const double rhs = tangent_pair(z, kappa11(w));
        REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-15));
    }
}

TEST_CASE("Liouville contractions on TT*M") {
    TTStarPoint w{{0.0}, {3.0}, {4.0}, {0.5}};
    REQUIRE(G_M(w) == 12.0);
    REQUIRE(liouville_theta(w) == 12.0);

    const TTStarIncrement d{{0.25}, {-1.0}, {2.0}, {0.125}};
    REQUIRE(dT_theta(w, d) == 0.5 * 0.25 + 3.0 * 2.0);
    REQUIRE(iT_omega(w, d) == 0.5 * 0.25 - 4.0 * -1.0);

    const TTStarPoint rest{{0.0}, {3.0}, {0.0}, {0.0}};
    REQUIRE(iT_omega(rest, d) == 0.0);
}

TEST_CASE("dT_theta minus iT_omega is the differential of G") {
    for (int trial = 0; trial < 100; ++trial) {
        const TTStarPoint w = random_ttstar(2);
        const TTStarIncrement d{random_vec(2), random_vec(2), random_vec(2),
                                random_vec(2)};
        const double lhs = dT_theta(w, d) - iT_omega(w, d);
        const double dg = dot(w.v, d.dp) + dot(w.p, d.dv);
        REQUIRE_THAT(lhs, WithinAbs(dg, 1e-14));
    }
}

TEST_CASE("second-order kappa shuffles commute with the projections") {
    for (int trial = 0; trial < 200; ++trial) {
        const T2TPoint w{random_vec(2), random_vec(2), random_vec(2),
                         random_vec(2), random_vec(2), random_vec(2)};
        REQUIRE(kappa12(kappa21(w)) == w);

        // Projecting after κ^{2,1} equals κ^{1,1} after projecting.
        const TTPoint lhs = project_TT2_to_TT(kappa21(w));
        const TTPoint rhs = kappa11(project_T2T_to_TT(w));
        REQUIRE(lhs == rhs);
    }

    for (int trial = 0; trial < 200; ++trial) {
        const TT2Point u{random_vec(2), random_vec(2), random_vec(2),
                         random_vec(2), random_vec(2), random_vec(2)};
        REQUIRE(kappa21(kappa12(u)) == u);
    }
}
