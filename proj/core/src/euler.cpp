#include "shocklab/euler.hpp"

#include <cmath>
#include <string>

#include "shocklab/errors.hpp"

namespace shocklab {

Vec conserved(const PrimitiveState& w, const GasModel& gas, int dim) {
    const double ke = dim == 2 ? 0.5 * w.rho * (w.u * w.u + w.v * w.v)
                               : 0.5 * w.rho * w.u * w.u;
    const double e = w.p / (gas.gamma - 1.0) + ke;
    if (dim == 2) return Vec(w.rho, w.rho * w.u, w.rho * w.v, e);
    return Vec(w.rho, w.rho * w.u, e);
}

PrimitiveState primitive(const Vec& q, const GasModel& gas) {
    if (!q.finite())
        throw NonPhysicalState("non-finite conserved state");
    PrimitiveState w;
    w.rho = q[0];
    if (!(w.rho > 0.0))
        throw NonPhysicalState("non-physical state: rho = " + std::to_string(w.rho));
    w.u = q[1] / w.rho;
    double ke = 0.5 * w.rho * w.u * w.u;
    if (q.n == 4) {
        w.v = q[2] / w.rho;
        ke += 0.5 * w.rho * w.v * w.v;
    }
    w.p = (gas.gamma - 1.0) * (q[q.n - 1] - ke);
    if (!(w.p > 0.0))
        throw NonPhysicalState("non-physical state: p = " + std::to_string(w.p));
    return w;
}

double sound_speed(const PrimitiveState& w, const GasModel& gas) {
    return std::sqrt(gas.gamma * w.p / w.rho);
}

ShockStatePair moving_shock_states(const ShockSpec& spec, const GasModel& gas) {
    const double g = gas.gamma;
    const double M = spec.mach;
    const double us = spec.shock_speed;

    ShockStatePair s;
    s.upstream = {g, M + us, 0.0, 1.0};

    const double M2 = M * M;
    PrimitiveState& d = s.downstream;
    d.rho = (g + 1.0) * M2 * s.upstream.rho / ((g - 1.0) * M2 + 2.0);
    d.u = s.upstream.rho * (s.upstream.u - us) / d.rho + us;
    d.p = s.upstream.p * (2.0 * g * M2 - (g - 1.0)) / (g + 1.0);
    return s;
}

std::array<double, 3> shock_frame_invariants(const PrimitiveState& w, double shock_speed,
                                             const GasModel& gas) {
    const double rel = w.u - shock_speed;
    return {w.rho * rel,
            w.rho * rel * rel + w.p,
            gas.gamma * w.p / ((gas.gamma - 1.0) * w.rho) + 0.5 * rel * rel};
}

} // namespace shocklab
