// fmech — bundled aircraft scenario text, shared verbatim between the
// command-line front end (`engine aircraft`) and the scenario files shipped
// in scenarios/. A test asserts the shipped files carry exactly these bytes,
// so the embedded command and the on-disk fixtures can never drift apart.
#pragma once

namespace fmech {

/// Free flight: horizontal launch at v0 under gravity with anisotropic drag.
inline constexpr const char *kAircraftFreeScenario =
    R"TOML(# Aircraft free flight: horizontal launch at v0 with anisotropic drag.
# The closed-form solution decays exponentially toward terminal velocity.

[system]
dim = 2
lagrangian = "0.5*m*(v1^2 + v2^2) - m*g*x2"
rho = ["gh*v1", "gv*v2"]

[system.params]
m = 2.0
g = 9.81
gh = 0.5
gv = 0.8

[simulation]
t0 = 0.0
t1 = 5.0
dt = 1e-3
picture = "lagrangian"

[initial]
x = [0.0, 0.0]
v = [10.0, 0.0]

[forces]
zeta = ["0", "0"]

[output]
path = "aircraft_free.csv"
)TOML";

/// Steady flight: thrust balances drag and weight; level flight at v0.
inline constexpr const char *kAircraftSteadyScenario =
    R"TOML(# Aircraft steady flight: thrust exactly balances drag and weight, so the
# aircraft holds level flight at constant speed v0.

[system]
dim = 2
lagrangian = "0.5*m*(v1^2 + v2^2) - m*g*x2"
rho = ["gh*v1", "gv*v2"]

[system.params]
m = 2.0
g = 9.81
gh = 0.5
gv = 0.8
v0 = 10.0

[simulation]
t0 = 0.0
t1 = 5.0
dt = 1e-3
picture = "hamiltonian"

[initial]
x = [0.0, 0.0]
p = [20.0, 0.0]

[forces]
zeta = ["gh*v0", "m*g"]

[output]
path = "aircraft_steady.csv"
)TOML";

} // namespace fmech
