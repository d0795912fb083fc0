#pragma once

#include <array>

#include "shocklab/vec.hpp"

namespace shocklab {

struct GasModel {
    double gamma = 1.4;
    double R = 287.4; // J/(kg K), only used by the dimensional viscosity laws
};

// rho, velocity components and pressure. v is ignored in 1-D contexts.
struct PrimitiveState {
    double rho = 0.0;
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
};

// Normal shock moving at shock_speed through a domain of given length.
// mach is the shock Mach number seen from the upstream gas.
struct ShockSpec {
    double mach = 2.0;
    double shock_speed = 0.0;
    double shock_position = 0.5;
    double domain_length = 1.0;
};

struct ShockStatePair {
    PrimitiveState upstream;   // pre-shock gas the shock runs into
    PrimitiveState downstream; // shocked gas
};

// dim = 1 -> (rho, rho u, rho e_t), dim = 2 -> (rho, rho u, rho v, rho e_t)
Vec conserved(const PrimitiveState& w, const GasModel& gas, int dim = 1);

// Throws NonPhysicalState if rho <= 0, p <= 0 or any component is not finite.
PrimitiveState primitive(const Vec& q, const GasModel& gas);

double sound_speed(const PrimitiveState& w, const GasModel& gas);

// Upstream state is (gamma, mach + shock_speed, 1.0) so the upstream sound
// speed is exactly 1; downstream follows from the jump conditions written in
// the frame moving with the shock.
ShockStatePair moving_shock_states(const ShockSpec& spec, const GasModel& gas);

// The three quantities conserved across a shock moving at shock_speed, with
// w = u - shock_speed:  { rho w,  rho w^2 + p,  gamma p / ((gamma-1) rho) + w^2/2 }.
std::array<double, 3> shock_frame_invariants(const PrimitiveState& state, double shock_speed,
                                             const GasModel& gas);

} // namespace shocklab
