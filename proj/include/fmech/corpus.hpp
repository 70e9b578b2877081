// fmech — built-in system corpus
// Four reference systems used by the test suites and the `check` command:
// a forced planar aircraft, a free particle, a linearly damped oscillator,
// and a planar pendulum. They cover forced/unforced, linear/nonlinear, and
// one- and two-dimensional configurations.
#pragma once

#include <string>
#include <vector>

#include <fmech/system.hpp>

namespace fmech {

/// Planar aircraft with quadratic kinetic energy, gravity, and anisotropic
/// linear drag: L = m/2 (v1² + v2²) − m g x2, ρ = (gh·v1, gv·v2).
/// x1 is horizontal position, x2 altitude.
inline LagrangianSystem corpus_aircraft() {
    return make_lagrangian_system(
        2, "0.5*m*(v1^2 + v2^2) - m*g*x2", {"gh*v1", "gv*v2"},
        {{"m", 2.0}, {"g", 9.81}, {"gh", 0.5}, {"gv", 0.8}});
}

/// Free particle in the plane: L = ½(v1² + v2²), no force form.
inline LagrangianSystem corpus_free_particle() {
    return make_lagrangian_system(2, "0.5*(v1^2 + v2^2)", {}, {});
}

/// Unit-mass oscillator with linear velocity damping entering through the
/// force form: L = ½v1² − ½x1², ρ = (c·v1).
inline LagrangianSystem corpus_damped_oscillator() {
    return make_lagrangian_system(1, "0.5*v1^2 - 0.5*x1^2", {"c*v1"},
                                  {{"c", 0.1}});
}

/// Planar pendulum (angle coordinate): L = ½ M l² v1² + M g l cos(x1).
inline LagrangianSystem corpus_pendulum() {
    return make_lagrangian_system(1, "0.5*M*l^2*v1^2 + M*g*l*cos(x1)", {},
                                  {{"M", 1.2}, {"l", 0.8}, {"g", 9.81}});
}

/// All corpus systems with their names, in a fixed order.
inline std::vector<std::pair<std::string, LagrangianSystem>> corpus_systems() {
    return {{"aircraft", corpus_aircraft()},
            {"free_particle", corpus_free_particle()},
            {"damped_oscillator", corpus_damped_oscillator()},
            {"pendulum", corpus_pendulum()}};
}

} // namespace fmech
