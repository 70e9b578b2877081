// fmech — error taxonomy
// Exception types shared by every layer of the library.
#pragma once

#include <stdexcept>
#include <string>

namespace fmech {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Expression-text syntax error. Carries the byte offset of the offending
/// character in the original input.
struct parse_error : error {
    std::size_t offset;
    parse_error(const std::string &msg, std::size_t at)
        : error(msg + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

/// Evaluation left the mathematical domain of a subexpression
/// (division by zero, ln of a nonpositive value, ...). Carries the printed
/// form of the offending subexpression.
struct domain_error : error {
    std::string subexpr;
    domain_error(const std::string &what_failed, const std::string &sub)
        : error(what_failed + " in subexpression `" + sub + "`"), subexpr(sub) {}
};

/// Two bundle points that must share base coordinates do not.
struct base_mismatch_error : error {
    explicit base_mismatch_error(const std::string &msg) : error(msg) {}
};

/// The velocity Hessian of the Lagrangian is numerically singular, so the
/// system is not hyperregular at the requested point. Carries the
/// infinity-norm condition estimate that tripped the threshold.
struct singular_mass_matrix_error : error {
    double condition;
    explicit singular_mass_matrix_error(double cond)
        : error("velocity Hessian is numerically singular (condition estimate " +
                std::to_string(cond) + ")"),
          condition(cond) {}
    /// Same failure with location context appended (e.g. "at t=1.25" mid-flow).
    singular_mass_matrix_error(double cond, const std::string &context)
        : error("velocity Hessian is numerically singular (condition estimate " +
                std::to_string(cond) + ") " + context),
          condition(cond) {}
};

/// Newton inversion of the momentum map failed to meet tolerance.
struct no_convergence_error : error {
    int iterations;
    double last_residual;
    no_convergence_error(int iters, double resid)
        : error("Newton iteration did not converge after " + std::to_string(iters) +
                " iterations (last residual " + std::to_string(resid) + ")"),
          iterations(iters), last_residual(resid) {}
    /// Same failure with location context appended (e.g. "at t=1.25" mid-flow).
    no_convergence_error(int iters, double resid, const std::string &context)
        : error("Newton iteration did not converge after " + std::to_string(iters) +
                " iterations (last residual " + std::to_string(resid) + ") " +
                context),
          iterations(iters), last_residual(resid) {}
};

/// A scenario file is syntactically or semantically invalid. Carries the
/// dotted name of the offending field.
struct config_error : error {
    std::string field;
    config_error(const std::string &fld, const std::string &msg)
        : error("invalid configuration field `" + fld + "`: " + msg), field(fld) {}
};

/// Two trajectories/grids that must share a sampling do not.
struct grid_error : error {
    explicit grid_error(const std::string &msg) : error(msg) {}
};

/// The action functional was requested for a system whose force form is not
/// identically zero; the action exists only in the potential case.
struct non_potential_system_error : error {
    explicit non_potential_system_error(const std::string &msg) : error(msg) {}
};

} // namespace fmech
