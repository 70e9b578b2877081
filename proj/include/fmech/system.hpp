// fmech — Lagrangian system description
// A system is a dimension m, a Lagrangian L(x, v), an m-component force form
// ρ_κ(x, v) (the non-potential part of the dynamics; all-zero when the system
// is purely variational), and a table of named constants.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmech/errors.hpp>
#include <fmech/expr.hpp>

namespace fmech {

/// Immutable description of a forced Lagrangian system on ℝ^m.
struct LagrangianSystem {
    int dim{0};
    Expression L;                ///< Lagrangian L(x, v)
    std::vector<Expression> rho; ///< force-form components ρ_κ(x, v), size m
    ParamMap params;             ///< named constants bound at evaluation
    bool potential{true};        ///< true iff every ρ_κ is the literal zero

    /// Evaluation point at (x, v) with the system's parameters bound.
    EvalPoint at(const Vec &x, const Vec &v) const {
        EvalPoint pt;
        pt.x = x;
        pt.v = v;
        pt.params = params;
        return pt;
    }

    /// Force-form components evaluated at (x, v).
    Vec rho_at(const EvalPoint &pt) const {
        Vec r(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k)
            r[static_cast<std::size_t>(k)] = eval(rho[static_cast<std::size_t>(k)], pt);
        return r;
    }
};

/// Build a system from expression texts. An empty `rho_texts` means a purely
/// variational system (every component zero); otherwise exactly m components
/// are required.
inline LagrangianSystem
make_lagrangian_system(int dim, const std::string &L_text,
                       std::vector<std::string> rho_texts, ParamMap params) {
    if (dim < 1)
        throw config_error("system.dim", "dimension must be at least 1");
    std::set<std::string> names;
    for (const auto &kv : params)
        names.insert(kv.first);

    LagrangianSystem sys;
    sys.dim = dim;
    sys.params = std::move(params);
    sys.L = parse(L_text, dim, names, VarPolicy::lagrangian());

    if (rho_texts.empty())
        rho_texts.assign(static_cast<std::size_t>(dim), "0");
    if (rho_texts.size() != static_cast<std::size_t>(dim))
        throw config_error("system.rho",
                           "expected " + std::to_string(dim) +
                               " force-form components, got " +
                               std::to_string(rho_texts.size()));
    sys.potential = true;
    for (const std::string &text : rho_texts) {
        sys.rho.push_back(parse(text, dim, names, VarPolicy::lagrangian()));
        if (text != "0")
            sys.potential = false;
    }
    return sys;
}

} // namespace fmech
