// fmech — expression DSL
// Parser, printer, symbolic derivative, and hyper-dual evaluation for the
// small infix language that defines Lagrangians, force forms, force
// schedules, variations, and phase-space observables.
//
// Grammar (standard infix):
//   expr   := term  (('+'|'-') term)*          left-associative
//   term   := factor (('*'|'/') factor)*       left-associative
//   factor := '-' factor | power               unary minus
//   power  := atom ('^' factor)?               right-associative
//   atom   := number | identifier | identifier '(' expr ')' | '(' expr ')'
//
// Identifiers: declared parameter names take precedence; otherwise x<k>,
// v<k>, p<k> with 1 ≤ k ≤ m are configuration / velocity / momentum slots,
// `t` is time, and sin/cos/exp/ln/sqrt are the function heads. `^` accepts
// only constant (variable-free) exponents; write exp(y*ln(x)) for x^y.
#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmech/errors.hpp>
#include <fmech/hyperdual.hpp>
#include <fmech/linalg.hpp>

namespace fmech {

/// Map of parameter name → value, fixed per system.
using ParamMap = std::map<std::string, double>;

/// Which slot family a variable belongs to.
enum class VarKind { X, V, P, Time };

/// Function heads supported by the DSL.
enum class Func { Sin, Cos, Exp, Ln, Sqrt };

namespace detail {

enum class NodeType { Literal, Param, Var, Add, Sub, Mul, Div, Pow, Neg, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Children are shared; trees may alias subtrees freely.
struct Node {
    NodeType type;
    double literal{0.0};   // Literal
    std::string name;      // Param
    VarKind vkind{VarKind::X};
    int index{0};          // Var: 1-based slot index (unused for Time)
    Func fn{Func::Sin};    // Call
    NodePtr a, b;          // operands

    static NodePtr make_literal(double v) {
        auto n = std::make_shared<Node>();
        n->type = NodeType::Literal;
        n->literal = v;
        return n;
    }
    static NodePtr make_param(std::string name) {
        auto n = std::make_shared<Node>();
        n->type = NodeType::Param;
        n->name = std::move(name);
        return n;
    }
    static NodePtr make_var(VarKind k, int index) {
        auto n = std::make_shared<Node>();
        n->type = NodeType::Var;
        n->vkind = k;
        n->index = index;
        return n;
    }
    static NodePtr make_binary(NodeType t, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->type = t;
        n->a = std::move(lhs);
        n->b = std::move(rhs);
        return n;
    }
    static NodePtr make_neg(NodePtr operand) {
        auto n = std::make_shared<Node>();
        n->type = NodeType::Neg;
        n->a = std::move(operand);
        return n;
    }
    static NodePtr make_call(Func f, NodePtr arg) {
        auto n = std::make_shared<Node>();
        n->type = NodeType::Call;
        n->fn = f;
        n->a = std::move(arg);
        return n;
    }
};

inline bool references_variables(const NodePtr &n) {
    if (!n)
        return false;
    if (n->type == NodeType::Var)
        return true;
    return references_variables(n->a) || references_variables(n->b);
}

} // namespace detail

/// Which variable families an expression context admits.
struct VarPolicy {
    bool allow_x{false}, allow_v{false}, allow_p{false}, allow_t{false};

    /// Lagrangians and force forms: functions of (x, v).
    static VarPolicy lagrangian() { return {true, true, false, false}; }
    /// Phase-space observables: functions of (x, p).
    static VarPolicy observable() { return {true, false, true, false}; }
    /// Force schedules and variations: functions of t alone.
    static VarPolicy time_only() { return {false, false, false, true}; }
    /// Everything legal (used by generic tests).
    static VarPolicy any() { return {true, true, true, true}; }
};

/// Immutable parsed expression tied to a system dimension.
class Expression {
  public:
    Expression() = default;
    Expression(detail::NodePtr root, int dim) : root_(std::move(root)), dim_(dim) {}

    const detail::NodePtr &root() const { return root_; }
    int dim() const { return dim_; }
    bool empty() const { return !root_; }

  private:
    detail::NodePtr root_;
    int dim_{0};
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
  public:
    Parser(const std::string &text, int dim, const std::set<std::string> &params,
           VarPolicy policy)
        : text_(text), dim_(dim), params_(params), policy_(policy) {}

    NodePtr parse() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string &text_;
    std::size_t pos_{0};
    int dim_;
    const std::set<std::string> &params_;
    VarPolicy policy_;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+'))
                lhs = Node::make_binary(NodeType::Add, lhs, parse_term());
            else if (consume('-'))
                lhs = Node::make_binary(NodeType::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (consume('*'))
                lhs = Node::make_binary(NodeType::Mul, lhs, parse_factor());
            else if (consume('/'))
                lhs = Node::make_binary(NodeType::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    NodePtr parse_factor() {
        if (consume('-'))
            return Node::make_neg(parse_factor());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) {
            const std::size_t at = pos_;
            NodePtr exponent = parse_factor(); // right-associative; sign allowed
            if (references_variables(exponent))
                throw parse_error("exponent of `^` must be constant "
                                  "(write exp(y*ln(x)) for variable exponents)",
                                  at);
            return Node::make_binary(NodeType::Pow, base, exponent);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw parse_error("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!consume(')'))
                throw parse_error("expected `)`", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        throw parse_error(std::string("unexpected character `") + c + "`", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(text_.substr(start), &consumed);
        } catch (const std::exception &) {
            throw parse_error("malformed number", start);
        }
        pos_ = start + consumed;
        return Node::make_literal(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);

        // Function call?
        const std::optional<Func> fn = function_head(name);
        if (fn && peek_is('(')) {
            ++pos_;
            NodePtr arg = parse_expr();
            if (!consume(')'))
                throw parse_error("expected `)` closing call to " + name, pos_);
            return Node::make_call(*fn, arg);
        }

        // Declared parameters take precedence over the slot patterns, so a
        // parameter may be called e.g. `v0` (slot indices start at 1).
        if (params_.count(name))
            return Node::make_param(name);

        if (name == "t") {
            if (!policy_.allow_t)
                throw parse_error("variable `t` is not legal in this context",
                                  start);
            return Node::make_var(VarKind::Time, 0);
        }

        if ((name[0] == 'x' || name[0] == 'v' || name[0] == 'p') &&
            name.size() > 1 &&
            std::isdigit(static_cast<unsigned char>(name[1]))) {
            bool all_digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    all_digits = false;
            if (all_digits) {
                const int index = std::atoi(name.c_str() + 1);
                if (index < 1 || index > dim_)
                    throw parse_error("variable index out of range in `" + name +
                                          "` (dimension is " +
                                          std::to_string(dim_) + ")",
                                      start);
                const VarKind kind = name[0] == 'x'   ? VarKind::X
                                     : name[0] == 'v' ? VarKind::V
                                                      : VarKind::P;
                const bool legal = kind == VarKind::X   ? policy_.allow_x
                                   : kind == VarKind::V ? policy_.allow_v
                                                        : policy_.allow_p;
                if (!legal)
                    throw parse_error("variable `" + name +
                                          "` is not legal in this context",
                                      start);
                return Node::make_var(kind, index);
            }
        }

        throw parse_error("unknown identifier `" + name + "`", start);
    }

    static std::optional<Func> function_head(const std::string &name) {
        if (name == "sin")
            return Func::Sin;
        if (name == "cos")
            return Func::Cos;
        if (name == "exp")
            return Func::Exp;
        if (name == "ln")
            return Func::Ln;
        if (name == "sqrt")
            return Func::Sqrt;
        return std::nullopt;
    }
};

} // namespace detail

/// Parse `text` against dimension `dim`, the declared parameter names, and a
/// variable policy. Parameter names shadowing a legal slot name (x<k>/v<k>/
/// p<k> with k ≤ dim, or `t`) are rejected to keep scenarios unambiguous.
inline Expression parse(const std::string &text, int dim,
                        const std::set<std::string> &param_names,
                        VarPolicy policy = VarPolicy::any()) {
    if (text.empty())
        throw parse_error("empty expression", 0);
    for (const std::string &name : param_names) {
        if (name == "t")
            throw parse_error("parameter name `t` shadows the time variable", 0);
        if ((name[0] == 'x' || name[0] == 'v' || name[0] == 'p') &&
            name.size() > 1) {
            bool all_digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    all_digits = false;
            if (all_digits) {
                const int index = std::atoi(name.c_str() + 1);
                if (index >= 1 && index <= dim)
                    throw parse_error("parameter name `" + name +
                                          "` shadows a variable slot",
                                      0);
            }
        }
    }
    detail::Parser parser(text, dim, param_names, policy);
    return Expression(parser.parse(), dim);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string print_node(const NodePtr &n) {
    switch (n->type) {
    case NodeType::Literal: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n->literal);
        return buf;
    }
    case NodeType::Param:
        return n->name;
    case NodeType::Var:
        switch (n->vkind) {
        case VarKind::X:
            return "x" + std::to_string(n->index);
        case VarKind::V:
            return "v" + std::to_string(n->index);
        case VarKind::P:
            return "p" + std::to_string(n->index);
        case VarKind::Time:
            return "t";
        }
        return "?";
    case NodeType::Add:
        return "(" + print_node(n->a) + "+" + print_node(n->b) + ")";
    case NodeType::Sub:
        return "(" + print_node(n->a) + "-" + print_node(n->b) + ")";
    case NodeType::Mul:
        return "(" + print_node(n->a) + "*" + print_node(n->b) + ")";
    case NodeType::Div:
        return "(" + print_node(n->a) + "/" + print_node(n->b) + ")";
    case NodeType::Pow:
        return "(" + print_node(n->a) + "^" + print_node(n->b) + ")";
    case NodeType::Neg:
        return "(-" + print_node(n->a) + ")";
    case NodeType::Call: {
        const char *head = n->fn == Func::Sin   ? "sin"
                           : n->fn == Func::Cos ? "cos"
                           : n->fn == Func::Exp ? "exp"
                           : n->fn == Func::Ln  ? "ln"
                                                : "sqrt";
        return std::string(head) + "(" + print_node(n->a) + ")";
    }
    }
    return "?";
}

} // namespace detail

/// Fully parenthesized round-trippable text form.
inline std::string to_string(const Expression &e) {
    return e.empty() ? std::string() : detail::print_node(e.root());
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Point at which expressions are evaluated. Slot vectors that a given
/// expression never references may be left empty.
struct EvalPoint {
    std::vector<double> x; ///< configuration slots x1..xm
    std::vector<double> v; ///< velocity slots v1..vm
    std::vector<double> p; ///< momentum slots p1..pm (observables)
    double t{0.0};         ///< time
    ParamMap params;       ///< named constants
};

/// A probe direction: which single slot a hyper-dual channel is seeded on.
struct Seed {
    VarKind kind;
    int index; ///< 1-based; ignored for Time
};

namespace detail {

inline double slot_value(const Node &n, const EvalPoint &pt) {
    const std::vector<double> *vec = nullptr;
    switch (n.vkind) {
    case VarKind::X:
        vec = &pt.x;
        break;
    case VarKind::V:
        vec = &pt.v;
        break;
    case VarKind::P:
        vec = &pt.p;
        break;
    case VarKind::Time:
        return pt.t;
    }
    if (n.index < 1 || static_cast<std::size_t>(n.index) > vec->size())
        throw domain_error("variable not bound at evaluation point",
                           print_node(std::make_shared<Node>(n)));
    return (*vec)[static_cast<std::size_t>(n.index - 1)];
}

inline bool seed_matches(const std::optional<Seed> &s, const Node &n) {
    return s && s->kind == n.vkind &&
           (n.vkind == VarKind::Time || s->index == n.index);
}

inline HyperDual2 eval_node(const NodePtr &n, const EvalPoint &pt,
                            const std::optional<Seed> &s1,
                            const std::optional<Seed> &s2) {
    switch (n->type) {
    case NodeType::Literal:
        return HyperDual2(n->literal);
    case NodeType::Param: {
        const auto it = pt.params.find(n->name);
        if (it == pt.params.end())
            throw domain_error("parameter has no value", n->name);
        return HyperDual2(it->second);
    }
    case NodeType::Var:
        return {slot_value(*n, pt), seed_matches(s1, *n) ? 1.0 : 0.0,
                seed_matches(s2, *n) ? 1.0 : 0.0, 0.0};
    case NodeType::Add:
        return eval_node(n->a, pt, s1, s2) + eval_node(n->b, pt, s1, s2);
    case NodeType::Sub:
        return eval_node(n->a, pt, s1, s2) - eval_node(n->b, pt, s1, s2);
    case NodeType::Mul:
        return eval_node(n->a, pt, s1, s2) * eval_node(n->b, pt, s1, s2);
    case NodeType::Div: {
        const HyperDual2 num = eval_node(n->a, pt, s1, s2);
        const HyperDual2 den = eval_node(n->b, pt, s1, s2);
        if (den.val == 0.0)
            throw domain_error("division by zero", print_node(n));
        return num / den;
    }
    case NodeType::Pow: {
        const HyperDual2 base = eval_node(n->a, pt, s1, s2);
        const double expv = eval_node(n->b, pt, s1, s2).val; // constant subtree
        const bool integral = expv == std::rint(expv) && std::abs(expv) <= 64.0;
        if (integral && expv < 0.0 && base.val == 0.0)
            throw domain_error("zero base raised to a negative exponent",
                               print_node(n));
        if (!integral && base.val <= 0.0)
            throw domain_error(
                "power with non-integer exponent and nonpositive base",
                print_node(n));
        return pow(base, expv);
    }
    case NodeType::Neg:
        return -eval_node(n->a, pt, s1, s2);
    case NodeType::Call: {
        const HyperDual2 arg = eval_node(n->a, pt, s1, s2);
        switch (n->fn) {
        case Func::Sin:
            return sin(arg);
        case Func::Cos:
            return cos(arg);
        case Func::Exp:
            return exp(arg);
        case Func::Ln:
            if (arg.val <= 0.0)
                throw domain_error("ln of nonpositive value", print_node(n));
            return ln(arg);
        case Func::Sqrt:
            if (arg.val <= 0.0)
                throw domain_error("sqrt of nonpositive value", print_node(n));
            return sqrt(arg);
        }
        return HyperDual2(0.0);
    }
    }
    return HyperDual2(0.0);
}

} // namespace detail

/// Evaluate with up to two seeded hyper-dual channels. The result carries the
/// value, the two directional derivatives, and the mixed second derivative.
inline HyperDual2 eval_seeded(const Expression &e, const EvalPoint &pt,
                              std::optional<Seed> s1 = std::nullopt,
                              std::optional<Seed> s2 = std::nullopt) {
    return detail::eval_node(e.root(), pt, s1, s2);
}

/// Plain value.
inline double eval(const Expression &e, const EvalPoint &pt) {
    return eval_seeded(e, pt).val;
}

namespace detail {

inline std::vector<double> gradient(const Expression &e, const EvalPoint &pt,
                                    VarKind kind) {
    std::vector<double> g(static_cast<std::size_t>(e.dim()));
    for (int k = 1; k <= e.dim(); ++k)
        g[static_cast<std::size_t>(k - 1)] =
            eval_seeded(e, pt, Seed{kind, k}).d1;
    return g;
}

} // namespace detail

/// ∂e/∂x^κ, κ = 1..m.
inline std::vector<double> grad_x(const Expression &e, const EvalPoint &pt) {
    return detail::gradient(e, pt, VarKind::X);
}

/// ∂e/∂ẋ^κ (velocity slots).
inline std::vector<double> grad_v(const Expression &e, const EvalPoint &pt) {
    return detail::gradient(e, pt, VarKind::V);
}

/// ∂e/∂p_κ (momentum slots).
inline std::vector<double> grad_p(const Expression &e, const EvalPoint &pt) {
    return detail::gradient(e, pt, VarKind::P);
}

/// dⁿe/dtⁿ bundle along the time slot: value, first, and second derivative.
struct TimeJet {
    double value, first, second;
};

/// Value plus first and second time derivatives (for paths and variations).
inline TimeJet time_jet(const Expression &e, const EvalPoint &pt) {
    const HyperDual2 r =
        eval_seeded(e, pt, Seed{VarKind::Time, 0}, Seed{VarKind::Time, 0});
    return {r.val, r.d1, r.d12};
}

/// Symmetric Hessian over one slot family: m(m+1)/2 mixed-channel passes.
inline Mat hessian(const Expression &e, const EvalPoint &pt, VarKind kind) {
    Mat h(e.dim());
    for (int i = 1; i <= e.dim(); ++i)
        for (int j = i; j <= e.dim(); ++j) {
            const double mixed =
                eval_seeded(e, pt, Seed{kind, i}, Seed{kind, j}).d12;
            h(i - 1, j - 1) = mixed;
            h(j - 1, i - 1) = mixed;
        }
    return h;
}

/// ∂²e/∂ẋ^κ∂ẋ^λ — the velocity (mass) block.
inline Mat hessian_vv(const Expression &e, const EvalPoint &pt) {
    return hessian(e, pt, VarKind::V);
}

/// ∂²e/∂ẋ^κ∂x^λ — row κ is a velocity slot, column λ a configuration slot.
inline Mat hessian_vx(const Expression &e, const EvalPoint &pt) {
    Mat h(e.dim());
    for (int i = 1; i <= e.dim(); ++i)
        for (int j = 1; j <= e.dim(); ++j)
            h(i - 1, j - 1) =
                eval_seeded(e, pt, Seed{VarKind::V, i}, Seed{VarKind::X, j}).d12;
    return h;
}

/// ∂²e/∂p_κ∂p_λ (observables).
inline Mat hessian_pp(const Expression &e, const EvalPoint &pt) {
    return hessian(e, pt, VarKind::P);
}

// ---------------------------------------------------------------------------
// Symbolic derivative
// ---------------------------------------------------------------------------

namespace detail {

inline NodePtr derivative_node(const NodePtr &n, VarKind kind, int index);

inline NodePtr d_chain(Func fn, const NodePtr &arg, const NodePtr &darg) {
    // f'(u)·u' for each function head; no simplification by design.
    switch (fn) {
    case Func::Sin:
        return Node::make_binary(NodeType::Mul, Node::make_call(Func::Cos, arg),
                                 darg);
    case Func::Cos:
        return Node::make_neg(Node::make_binary(
            NodeType::Mul, Node::make_call(Func::Sin, arg), darg));
    case Func::Exp:
        return Node::make_binary(NodeType::Mul, Node::make_call(Func::Exp, arg),
                                 darg);
    case Func::Ln:
        return Node::make_binary(NodeType::Div, darg, arg);
    case Func::Sqrt:
        return Node::make_binary(
            NodeType::Div, darg,
            Node::make_binary(NodeType::Mul, Node::make_literal(2.0),
                              Node::make_call(Func::Sqrt, arg)));
    }
    return Node::make_literal(0.0);
}

inline NodePtr derivative_node(const NodePtr &n, VarKind kind, int index) {
    switch (n->type) {
    case NodeType::Literal:
    case NodeType::Param:
        return Node::make_literal(0.0);
    case NodeType::Var: {
        const bool match = n->vkind == kind &&
                           (kind == VarKind::Time || n->index == index);
        return Node::make_literal(match ? 1.0 : 0.0);
    }
    case NodeType::Add:
        return Node::make_binary(NodeType::Add, derivative_node(n->a, kind, index),
                                 derivative_node(n->b, kind, index));
    case NodeType::Sub:
        return Node::make_binary(NodeType::Sub, derivative_node(n->a, kind, index),
                                 derivative_node(n->b, kind, index));
    case NodeType::Mul:
        return Node::make_binary(
            NodeType::Add,
            Node::make_binary(NodeType::Mul, derivative_node(n->a, kind, index),
                              n->b),
            Node::make_binary(NodeType::Mul, n->a,
                              derivative_node(n->b, kind, index)));
    case NodeType::Div:
        // (a/b)' = a'/b − a·b'/b²
        return Node::make_binary(
            NodeType::Sub,
            Node::make_binary(NodeType::Div, derivative_node(n->a, kind, index),
                              n->b),
            Node::make_binary(
                NodeType::Div,
                Node::make_binary(NodeType::Mul, n->a,
                                  derivative_node(n->b, kind, index)),
                Node::make_binary(NodeType::Pow, n->b, Node::make_literal(2.0))));
    case NodeType::Pow: {
        // Exponent is constant by construction: (u^c)' = c·u^(c−1)·u'.
        NodePtr cm1 =
            Node::make_binary(NodeType::Sub, n->b, Node::make_literal(1.0));
        return Node::make_binary(
            NodeType::Mul,
            Node::make_binary(NodeType::Mul, n->b,
                              Node::make_binary(NodeType::Pow, n->a, cm1)),
            derivative_node(n->a, kind, index));
    }
    case NodeType::Neg:
        return Node::make_neg(derivative_node(n->a, kind, index));
    case NodeType::Call:
        return d_chain(n->fn, n->a, derivative_node(n->a, kind, index));
    }
    return Node::make_literal(0.0);
}

} // namespace detail

/// Symbolic partial derivative as a new AST (no simplification). Used to form
/// bracket expressions; numeric derivatives go through the seeded evaluator.
inline Expression derivative(const Expression &e, VarKind kind, int index = 0) {
    return Expression(detail::derivative_node(e.root(), kind, index), e.dim());
}

// ---------------------------------------------------------------------------
// AST construction helpers (for composing observables programmatically)
// ---------------------------------------------------------------------------

/// a + b as a new expression (dimensions must agree).
inline Expression expr_add(const Expression &a, const Expression &b) {
    return Expression(
        detail::Node::make_binary(detail::NodeType::Add, a.root(), b.root()),
        a.dim());
}

/// a − b.
inline Expression expr_sub(const Expression &a, const Expression &b) {
    return Expression(
        detail::Node::make_binary(detail::NodeType::Sub, a.root(), b.root()),
        a.dim());
}

/// a · b.
inline Expression expr_mul(const Expression &a, const Expression &b) {
    return Expression(
        detail::Node::make_binary(detail::NodeType::Mul, a.root(), b.root()),
        a.dim());
}

} // namespace fmech
