// Tests for the expression DSL: grammar and precedence, context vocabulary,
// printing, seeded evaluation, gradients/Hessians, the symbolic derivative,
// and the diagnostic quality of parse/domain errors.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include <fmech/errors.hpp>
#include <fmech/expr.hpp>

using namespace fmech;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double eval_text(const std::string &text, const EvalPoint &pt, int dim = 2,
                 std::set<std::string> params = {}) {
    return eval(parse(text, dim, params), pt);
}

} // namespace

TEST_CASE("arithmetic precedence and associativity") {
    EvalPoint pt;
    REQUIRE(eval_text("2*3+4*5", pt) == 26.0);
    REQUIRE(eval_text("2-3-4", pt) == -5.0);
    REQUIRE(eval_text("6/3/2", pt) == 1.0);
    REQUIRE(eval_text("2^3^2", pt) == 512.0); // right-associative exponent
    REQUIRE(eval_text("-2^2", pt) == -4.0);   // unary minus binds looser than ^
    REQUIRE(eval_text("--3", pt) == 3.0);
    REQUIRE(eval_text("2^-1", pt) == 0.5);    // signed constant exponent
    REQUIRE(eval_text("(2+3)*4", pt) == 20.0);
    REQUIRE(eval_text("1e2 + .5", pt) == 100.5);
}

TEST_CASE("evaluation of a mixed expression with a parameter") {
    EvalPoint pt;
    pt.x = {1.5, 0.0};
    pt.v = {0.5, 0.0};
    pt.params = {{"g", 9.81}};
    const Expression e = parse("2*x1^2 - sin(v1)/3 + g", 2, {"g"});
    REQUIRE_THAT(eval(e, pt), WithinAbs(14.150191487131932, 1e-14));
}

TEST_CASE("slot variables read the evaluation point") {
    EvalPoint pt;
    pt.x = {2.0, -3.0};
    pt.v = {0.5, 4.0};
    pt.p = {7.0, -1.0};
    pt.t = 1.25;
    REQUIRE(eval_text("x1+x2", pt) == -1.0);
    REQUIRE(eval_text("v1*v2", pt) == 2.0);
    REQUIRE(eval_text("p1-p2", pt) == 8.0);
    REQUIRE(eval_text("t*4", pt) == 5.0);
}

TEST_CASE("context vocabulary restricts variable families") {
    REQUIRE_NOTHROW(parse("x1*v1", 2, {}, VarPolicy::lagrangian()));
    REQUIRE_THROWS_AS(parse("p1", 2, {}, VarPolicy::lagrangian()), parse_error);
    REQUIRE_THROWS_AS(parse("t", 2, {}, VarPolicy::lagrangian()), parse_error);

    REQUIRE_NOTHROW(parse("x1*p2", 2, {}, VarPolicy::observable()));
    REQUIRE_THROWS_AS(parse("v1", 2, {}, VarPolicy::observable()), parse_error);

    REQUIRE_NOTHROW(parse("sin(2*t)", 2, {}, VarPolicy::time_only()));
    REQUIRE_THROWS_AS(parse("x1", 2, {}, VarPolicy::time_only()), parse_error);
}

TEST_CASE("parameter names resolve before variable patterns") {
    // `v0` is not a slot (indices start at 1), so it may name a parameter.
    EvalPoint pt;
    pt.t = 2.0;
    pt.params = {{"v0", 10.0}};
    REQUIRE(eval(parse("v0*t", 2, {"v0"}, VarPolicy::time_only()), pt) == 20.0);

    // A parameter that would shadow an in-range slot is rejected up front.
    REQUIRE_THROWS_AS(parse("v1", 2, {"v1"}), parse_error);
    REQUIRE_THROWS_AS(parse("x2+1", 2, {"x2"}), parse_error);
    REQUIRE_THROWS_AS(parse("t", 2, {"t"}), parse_error);
    // Out-of-range patterns are free for parameter use.
    pt.params["x9"] = 3.0;
    REQUIRE(eval(parse("x9", 2, {"x9"}), pt) == 3.0);
}

TEST_CASE("variable indices must lie within the dimension") {
    REQUIRE_NOTHROW(parse("x2", 2, {}));
    REQUIRE_THROWS_AS(parse("x3", 2, {}), parse_error);
    REQUIRE_THROWS_AS(parse("v3", 2, {}), parse_error);
    REQUIRE_THROWS_MATCHES(parse("p9", 2, {}), parse_error,
                           Catch::Matchers::MessageMatches(
                               ContainsSubstring("out of range")));
}

TEST_CASE("exponents must be variable-free") {
    REQUIRE_THROWS_AS(parse("x1^v1", 2, {}), parse_error);
    REQUIRE_THROWS_AS(parse("2^x1", 2, {}), parse_error);
    REQUIRE_NOTHROW(parse("x1^2", 2, {}));
    REQUIRE_NOTHROW(parse("x1^(1+2)", 2, {}));
    REQUIRE_NOTHROW(parse("x1^g", 2, {"g"})); // parameters are constant
}

TEST_CASE("syntax errors report a byte offset") {
    try {
        parse("1 + (2*", 2, {});
        FAIL("expected parse_error");
    } catch (const parse_error &err) {
        REQUIRE_THAT(err.what(), ContainsSubstring("byte"));
    }
    REQUIRE_THROWS_AS(parse("1+2)", 2, {}), parse_error);
    REQUIRE_THROWS_AS(parse("foo+1", 2, {}), parse_error);
    REQUIRE_THROWS_AS(parse("", 2, {}), parse_error);
    REQUIRE_THROWS_AS(parse("sin(x1", 2, {}), parse_error);
    REQUIRE_THROWS_AS(parse("1 $ 2", 2, {}), parse_error);
}

TEST_CASE("printing is fully parenthesized and round-trips") {
    const std::string text = "2*x1^2 - sin(v1)/3 + g*x2 - -v2";
    const Expression e = parse(text, 2, {"g"});
    const std::string printed = to_string(e);
    REQUIRE(printed.front() == '(');

    const Expression back = parse(printed, 2, {"g"});
    REQUIRE(to_string(back) == printed); // printing is idempotent

    EvalPoint pt;
    pt.x = {1.1, -0.4};
    pt.v = {0.9, 2.3};
    pt.params = {{"g", 9.81}};
    REQUIRE(eval(e, pt) == eval(back, pt)); // bitwise-equal evaluation
}

TEST_CASE("literals print with full precision") {
    const Expression e = parse("0.1", 1, {});
    EvalPoint pt;
    REQUIRE(eval(parse(to_string(e), 1, {}), pt) == 0.1);
}

TEST_CASE("gradients of a planar quadratic Lagrangian") {
    // L = m/2 (v1^2 + v2^2) - m g x2 at x = (0,0), v = (10,0).
    const Expression L =
        parse("0.5*m*(v1^2 + v2^2) - m*g*x2", 2, {"m", "g"},
              VarPolicy::lagrangian());
    EvalPoint pt;
    pt.x = {0.0, 0.0};
    pt.v = {10.0, 0.0};
    pt.params = {{"m", 2.0}, {"g", 9.81}};

    REQUIRE(eval(L, pt) == 100.0);

    const auto gx = grad_x(L, pt);
    REQUIRE(gx[0] == 0.0);
    REQUIRE(gx[1] == -19.62); // -m g

    const auto gv = grad_v(L, pt);
    REQUIRE(gv[0] == 20.0); // m v1
    REQUIRE(gv[1] == 0.0);
}

TEST_CASE("velocity Hessian of the quadratic Lagrangian is m times identity") {
    const Expression L =
        parse("0.5*m*(v1^2 + v2^2) - m*g*x2", 2, {"m", "g"},
              VarPolicy::lagrangian());
    EvalPoint pt;
    pt.x = {0.3, -1.0};
    pt.v = {4.0, 5.0};
    pt.params = {{"m", 2.0}, {"g", 9.81}};

    const Mat w = hessian_vv(L, pt);
    REQUIRE(w(0, 0) == 2.0);
    REQUIRE(w(1, 1) == 2.0);
    REQUIRE(w(0, 1) == 0.0);
    REQUIRE(w(1, 0) == 0.0);

    const Mat wx = hessian_vx(L, pt);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            REQUIRE(wx(i, j) == 0.0);
}

TEST_CASE("mixed velocity-position Hessian of x1^2 * v1^3") {
    const Expression f = parse("x1^2*v1^3", 1, {}, VarPolicy::lagrangian());
    EvalPoint pt;
    pt.x = {2.0};
    pt.v = {3.0};
    // d/dv1 = 3 x1^2 v1^2; then d/dx1 = 6 x1 v1^2 = 108.
    const Mat wx = hessian_vx(f, pt);
    REQUIRE(wx(0, 0) == 108.0);
}

TEST_CASE("momentum gradients for observables") {
    const Expression f =
        parse("x1*p1 + p2^2", 2, {}, VarPolicy::observable());
    EvalPoint pt;
    pt.x = {5.0, 0.0};
    pt.p = {3.0, 4.0};
    const auto gp = grad_p(f, pt);
    REQUIRE(gp[0] == 5.0);
    REQUIRE(gp[1] == 8.0);
}

TEST_CASE("time jets carry value and two derivatives") {
    const Expression f = parse("sin(2*t)", 1, {}, VarPolicy::time_only());
    EvalPoint pt;
    pt.t = 0.4;
    const TimeJet jet = time_jet(f, pt);
    REQUIRE_THAT(jet.value, WithinRel(std::sin(0.8), 1e-15));
    REQUIRE_THAT(jet.first, WithinRel(2.0 * std::cos(0.8), 1e-15));
    REQUIRE_THAT(jet.second, WithinRel(-4.0 * std::sin(0.8), 1e-14));
}

TEST_CASE("symbolic derivative matches the seeded evaluator") {
    const Expression f =
        parse("sin(x1*v1)/(2+cos(x1)) + x1^3*ln(2+v1^2)", 1, {});
    const Expression dfdx = derivative(f, VarKind::X, 1);
    const Expression dfdv = derivative(f, VarKind::V, 1);

    for (const double xv : {0.3, -1.2, 2.7}) {
        for (const double vv : {0.8, -0.6}) {
            EvalPoint pt;
            pt.x = {xv};
            pt.v = {vv};
            const double seeded_x = eval_seeded(f, pt, Seed{VarKind::X, 1}).d1;
            const double seeded_v = eval_seeded(f, pt, Seed{VarKind::V, 1}).d1;
            REQUIRE_THAT(eval(dfdx, pt), WithinAbs(seeded_x, 1e-12));
            REQUIRE_THAT(eval(dfdv, pt), WithinAbs(seeded_v, 1e-12));
        }
    }
}

TEST_CASE("symbolic derivative of a power") {
    const Expression f = parse("x1^3", 1, {});
    const Expression df = derivative(f, VarKind::X, 1);
    EvalPoint pt;
    pt.x = {2.0};
    REQUIRE(eval(df, pt) == 12.0);
}

TEST_CASE("domain errors name the offending subexpression") {
    EvalPoint pt;
    pt.x = {0.0, 0.0};
    try {
        eval_text("1/x1", pt);
        FAIL("expected domain_error");
    } catch (const domain_error &err) {
        REQUIRE_THAT(err.what(), ContainsSubstring("(1/x1)"));
    }

    pt.x = {-1.0, 0.0};
    REQUIRE_THROWS_AS(eval_text("ln(x1)", pt), domain_error);
    REQUIRE_THROWS_AS(eval_text("sqrt(x1)", pt), domain_error);
    REQUIRE_THROWS_AS(eval_text("x1^0.5", pt), domain_error);
    pt.x = {0.0, 0.0};
    REQUIRE_THROWS_AS(eval_text("x1^-2", pt), domain_error);
}

TEST_CASE("unbound parameters are reported at evaluation") {
    const Expression e = parse("g*2", 1, {"g"});
    EvalPoint pt; // params left empty
    REQUIRE_THROWS_AS(eval(e, pt), domain_error);
}
