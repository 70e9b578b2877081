// Tests for the Poisson picture: canonical relations, exact antisymmetry,
// the Leibniz rule, the Jacobi identity through symbolic bracket composition,
// and the bracket form of the forced evolution law.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <fmech/corpus.hpp>
#include <fmech/poisson.hpp>

using namespace fmech;
using Catch::Matchers::WithinAbs;

namespace {

std::mt19937 rng(77130359u);

Vec random_vec(std::size_t m, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Vec r(m);
    for (double &c : r)
        c = dist(rng);
    return r;
}

Covector random_phase(std::size_t m) { return {random_vec(m), random_vec(m)}; }

ObservableExpr obs(const std::string &text, int dim = 2) {
    return parse(text, dim, {}, VarPolicy::observable());
}

/// Fixed polynomial observable basis per dimension, rich enough that the
/// evolution residual vanishes on all of it only for true solutions.
std::vector<ObservableExpr> observable_basis(int dim) {
    std::vector<std::string> texts;
    if (dim == 1)
        texts = {"x1",      "p1",      "x1*p1",    "x1^2",      "p1^2",
                 "x1^2*p1", "x1*p1^2", "x1^3",     "p1^3",      "1 + x1"};
    else
        texts = {"x1",    "x2",    "p1",    "p2",    "x1*p1",
                 "x2*p2", "x1^2",  "p2^2",  "x1*p2", "x2*p1"};
    std::vector<ObservableExpr> basis;
    for (const std::string &t : texts)
        basis.push_back(obs(t, dim));
    return basis;
}

} // namespace

TEST_CASE("canonical bracket relations") {
    for (int trial = 0; trial < 20; ++trial) {
        const Covector at = random_phase(2);
        REQUIRE(poisson_bracket(obs("x1"), obs("p1"), at) == 1.0);
        REQUIRE(poisson_bracket(obs("x1"), obs("p2"), at) == 0.0);
        REQUIRE(poisson_bracket(obs("x1"), obs("x2"), at) == 0.0);
        REQUIRE(poisson_bracket(obs("p1"), obs("p2"), at) == 0.0);
        REQUIRE(poisson_bracket(obs("p1"), obs("x1"), at) == -1.0);
    }
}

TEST_CASE("bracket against the aircraft Hamiltonian reads off velocity") {
    const ObservableExpr H =
        parse("(p1^2 + p2^2)/(2*m) + m*g*x2", 2, {"m", "g"},
              VarPolicy::observable());
    const Covector at{{0.0, 0.0}, {20.0, 0.0}};
    const ParamMap params{{"m", 2.0}, {"g", 9.81}};
    REQUIRE_THAT(poisson_bracket(obs("x1"), H, at, params),
                 WithinAbs(10.0, 1e-14));
}

TEST_CASE("the bracket is antisymmetric bitwise") {
    const ObservableExpr F = obs("x1^2*p2 + 3*x2 - sin(p1)");
    const ObservableExpr G = obs("p1*p2 - x1*x2 + exp(x2*p2/4)");
    for (int trial = 0; trial < 100; ++trial) {
        const Covector at = random_phase(2);
        const double fg = poisson_bracket(F, G, at);
        const double gf = poisson_bracket(G, F, at);
        REQUIRE(fg == -gf);                       // exact, not approximate
        REQUIRE(poisson_bracket(F, F, at) == 0.0); // {F,F} = 0 exactly
    }
}

TEST_CASE("the bracket satisfies the Leibniz rule") {
    const ObservableExpr F = obs("x1*p1 + p2^2");
    const ObservableExpr G = obs("x2^2 - p1");
    const ObservableExpr K = obs("x1 + x2*p2");
    const ObservableExpr GK = expr_mul(G, K);
    for (int trial = 0; trial < 100; ++trial) {
        const Covector at = random_phase(2);
        EvalPoint pt;
        pt.x = at.x;
        pt.p = at.p;
        const double lhs = poisson_bracket(F, GK, at);
        const double rhs = poisson_bracket(F, G, at) * eval(K, pt) +
                           eval(G, pt) * poisson_bracket(F, K, at);
        REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-12));
    }
}

TEST_CASE("the symbolic bracket expression matches the numeric bracket") {
    const ObservableExpr F = obs("x1^2*p2 + 3*x2");
    const ObservableExpr G = obs("p1*p2 - x1*x2");
    const ObservableExpr FG = bracket_expr(F, G);
    for (int trial = 0; trial < 100; ++trial) {
        const Covector at = random_phase(2);
        EvalPoint pt;
        pt.x = at.x;
        pt.p = at.p;
        REQUIRE_THAT(eval(FG, pt),
                     WithinAbs(poisson_bracket(F, G, at), 1e-12));
    }
}

TEST_CASE("the Jacobi identity holds through nested brackets") {
    const ObservableExpr F = obs("x1^2*p2 + 3*x2");
    const ObservableExpr G = obs("p1*p2 - x1*x2");
    const ObservableExpr K = obs("x2^2*p1 + p2^3");
    for (int trial = 0; trial < 100; ++trial) {
        const Covector at = random_phase(2);
        const double cyc = poisson_bracket(F, bracket_expr(G, K), at) +
                           poisson_bracket(G, bracket_expr(K, F), at) +
                           poisson_bracket(K, bracket_expr(F, G), at);
        REQUIRE_THAT(cyc, WithinAbs(0.0, 1e-6));
    }
}

TEST_CASE("steady aircraft flight annihilates the momentum observable") {
    const LagrangianSystem sys = corpus_aircraft();
    const ForceMomentumSample sample{{7.3, 0.0}, {5.0, 19.62}, {20.0, 0.0}};
    const Vec xdot{10.0, 0.0}, pdot{0.0, 0.0};
    REQUIRE_THAT(evolution_residual(sys, obs("p1"), sample, xdot, pdot),
                 WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(evolution_residual(sys, obs("p2"), sample, xdot, pdot),
                 WithinAbs(0.0, 1e-12));
}

TEST_CASE("constant observables never evolve") {
    const LagrangianSystem sys = corpus_damped_oscillator();
    const ObservableExpr c = obs("3.5", 1);
    for (int trial = 0; trial < 20; ++trial) {
        const ForceMomentumSample sample{random_vec(1), random_vec(1),
                                         random_vec(1)};
        REQUIRE(evolution_residual(sys, c, sample, random_vec(1),
                                   random_vec(1)) == 0.0);
    }
}

TEST_CASE("evolution residual contracts the Hamilton residual") {
    // For any observable: residual(F) = Σ ∂F/∂x·R_x + ∂F/∂p·R_p where R is
    // the Hamilton-equation residual — an independent route to the same value.
    for (const auto &[name, sys] : corpus_systems()) {
        INFO("system: " << name);
        const std::size_t m = static_cast<std::size_t>(sys.dim);
        const auto basis = observable_basis(sys.dim);
        for (int trial = 0; trial < 25; ++trial) {
            const ForceMomentumSample sample{random_vec(m), random_vec(m),
                                             random_vec(m)};
            const Vec xdot = random_vec(m), pdot = random_vec(m);
            const Vec R = hamilton_residual(sys, sample, pdot, xdot);

            for (const ObservableExpr &F : basis) {
                EvalPoint pt;
                pt.x = sample.x;
                pt.p = sample.p;
                pt.params = sys.params;
                const Vec fx = grad_x(F, pt), fp = grad_p(F, pt);
                double contracted = 0.0;
                for (std::size_t k = 0; k < m; ++k)
                    contracted += fx[k] * R[k] + fp[k] * R[m + k];

                const double direct =
                    evolution_residual(sys, F, sample, xdot, pdot);
                REQUIRE_THAT(direct, WithinAbs(contracted, 1e-9));
            }
        }
    }
}

TEST_CASE("the basis detects non-solutions and passes solutions") {
    for (const auto &[name, sys] : corpus_systems()) {
        INFO("system: " << name);
        const std::size_t m = static_cast<std::size_t>(sys.dim);
        const auto basis = observable_basis(sys.dim);
        for (int trial = 0; trial < 10; ++trial) {
            // A genuine forced solution sample: rates from the forced field.
            const Covector p = random_phase(m);
            const Vec zeta = random_vec(m);
            const TangentVector u = legendre_invert(sys, p);
            const EvalPoint state = sys.at(u.x, u.v);
            const Vec gxL = grad_x(sys.L, state);
            const Vec rho = sys.rho_at(state);
            Vec pdot(m);
            for (std::size_t k = 0; k < m; ++k)
                pdot[k] = zeta[k] + gxL[k] - rho[k];
            const ForceMomentumSample good{p.x, zeta, p.p};

            double worst = 0.0;
            for (const ObservableExpr &F : basis)
                worst = std::max(worst, std::abs(evolution_residual(
                                            sys, F, good, u.v, pdot)));
            REQUIRE_THAT(worst, WithinAbs(0.0, 1e-10));

            // Perturbing any rate must be caught by some basis element.
            Vec bad_xdot = u.v;
            bad_xdot[0] += 0.1;
            double detect = 0.0;
            for (const ObservableExpr &F : basis)
                detect = std::max(detect, std::abs(evolution_residual(
                                              sys, F, good, bad_xdot, pdot)));
            REQUIRE(detect > 1e-3);

            Vec bad_pdot = pdot;
            bad_pdot[m - 1] -= 0.1;
            detect = 0.0;
            for (const ObservableExpr &F : basis)
                detect = std::max(detect, std::abs(evolution_residual(
                                              sys, F, good, u.v, bad_pdot)));
            REQUIRE(detect > 1e-3);
        }
    }
}
